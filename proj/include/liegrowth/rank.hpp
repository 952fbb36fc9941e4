#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <vector>

namespace liegrowth {

// Dense integer matrix, row major.  Entries in the graded rank problems are
// tiny (-1/0/+1) but intermediate eliminations are not, hence mpz.
using IntMatrix = std::vector<std::vector<mpz_class>>;

// Exact rank over Q via fraction-free (Bareiss) elimination.
int rank_q(IntMatrix m);

// Rank over GF(p), p an odd prime.  For integer matrices this is a certified
// lower bound for the rank over Q.
int rank_gfp(const IntMatrix& m, long p);

// Basis of the right nullspace over Q (vectors of size ncols), via
// rational RREF.  Deterministic: pivots scanned left to right.
std::vector<std::vector<mpq_class>> nullspace_q(const IntMatrix& m, std::size_t ncols);

// Incremental sparse echelon form over Q with ordered labels.  Used where the
// ambient basis is discovered on the fly (groupoid spans).  add() returns
// true when the vector enlarged the span.
template <class Label>
class Echelon {
public:
    using Vec = std::map<Label, mpq_class>;

    Vec reduce(Vec v) const {
        for (;;) {
            // Find the smallest label that is both in v and a pivot.
            const Vec* row = nullptr;
            const mpq_class* coeff = nullptr;
            typename std::map<Label, Vec>::const_iterator hit = rows_.end();
            for (const auto& [lab, c] : v) {
                auto it = rows_.find(lab);
                if (it != rows_.end()) {
                    hit = it;
                    coeff = &c;
                    break;
                }
            }
            if (hit == rows_.end()) return v;
            mpq_class f = *coeff;  // pivot coefficient in v (pivot of row is 1)
            row = &hit->second;
            for (const auto& [lab, c] : *row) {
                mpq_class& slot = v[lab];
                slot -= f * c;
                if (slot == 0) v.erase(lab);
            }
        }
    }

    bool add(Vec v) {
        v = reduce(std::move(v));
        if (v.empty()) return false;
        const Label piv = v.begin()->first;
        mpq_class inv = v.begin()->second;
        for (auto& [lab, c] : v) c /= inv;
        rows_.emplace(piv, std::move(v));
        return true;
    }

    bool contains(const Vec& v) const { return reduce(v).empty(); }
    int rank() const { return static_cast<int>(rows_.size()); }

private:
    std::map<Label, Vec> rows_;  // pivot label -> normalized row
};

}  // namespace liegrowth
