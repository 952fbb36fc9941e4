#include "liegrowth/series.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "liegrowth/errors.hpp"

namespace liegrowth {

namespace {
constexpr const char* kSeriesMagic = "# liegrowth series v1";
}

bool GrowthSeries::defined_at(long n) const {
    if (values_.count(n)) return true;
    return static_cast<bool>(eval_);
}

mpz_class GrowthSeries::at(long n) const {
    auto it = values_.find(n);
    if (it != values_.end()) return it->second;
    if (eval_) return eval_(n);
    throw ValidationError("series '" + tag_ + "' has no sample at n=" + std::to_string(n));
}

std::vector<long> GrowthSeries::points(long lo, long hi) const {
    std::vector<long> out;
    if (!values_.empty()) {
        for (auto it = values_.lower_bound(lo); it != values_.end() && it->first <= hi; ++it)
            out.push_back(it->first);
        return out;
    }
    if (!eval_) return out;
    for (long n = lo; n <= hi; ++n) out.push_back(n);
    return out;
}

void write_series_csv(const std::string& path, const GrowthSeries& s) {
    std::ofstream f(path);
    if (!f) throw StageError("io", "cannot open '" + path + "' for writing");
    f << kSeriesMagic << "\n";
    f << "# tag: " << s.tag() << "\n";
    f << "n,value\n";
    for (const auto& [n, v] : s.samples()) f << n << "," << v.get_str() << "\n";
    if (!f) throw StageError("io", "write to '" + path + "' failed");
}

GrowthSeries read_series_csv(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ValidationError("cannot open series file '" + path + "'");
    std::string line;
    if (!std::getline(f, line) || line != kSeriesMagic)
        throw ValidationError("'" + path + "': missing or unsupported series header");
    GrowthSeries s;
    bool saw_columns = false;
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        if (line.rfind("# tag: ", 0) == 0) {
            s.set_tag(line.substr(7));
            continue;
        }
        if (line[0] == '#') continue;
        if (!saw_columns) {
            if (line != "n,value")
                throw ValidationError("'" + path + "': expected column header 'n,value'");
            saw_columns = true;
            continue;
        }
        auto comma = line.find(',');
        if (comma == std::string::npos)
            throw ValidationError("'" + path + "': malformed row '" + line + "'");
        long n = 0;
        try {
            n = std::stol(line.substr(0, comma));
        } catch (const std::exception&) {
            throw ValidationError("'" + path + "': bad index in row '" + line + "'");
        }
        mpz_class v;
        if (v.set_str(line.substr(comma + 1), 10) != 0)
            throw ValidationError("'" + path + "': bad value in row '" + line + "'");
        s.set_value(n, v);
    }
    if (!saw_columns) throw ValidationError("'" + path + "': no data rows");
    return s;
}

GrowthSeries formula_pow2() {
    GrowthSeries s("pow2");
    s.set_eval([](long n) -> mpz_class {
        if (n < 0) throw ValidationError("pow2 needs n >= 0");
        mpz_class v = 1;
        mpz_mul_2exp(v.get_mpz_t(), v.get_mpz_t(), static_cast<unsigned long>(n));
        return v;
    });
    return s;
}

GrowthSeries formula_poly(int k) {
    GrowthSeries s("poly" + std::to_string(k));
    s.set_eval([k](long n) -> mpz_class {
        if (n < 1) throw ValidationError("poly needs n >= 1");
        mpz_class v;
        mpz_ui_pow_ui(v.get_mpz_t(), static_cast<unsigned long>(n),
                      static_cast<unsigned long>(k));
        return v;
    });
    return s;
}

GrowthSeries formula_constant(long c) {
    GrowthSeries s("const" + std::to_string(c));
    s.set_eval([c](long) -> mpz_class { return mpz_class(c); });
    return s;
}

Real ln_npowlogn(const Real& ln_n) { return ln_n * ln_n; }

GrowthSeries formula_npowlogn() {
    GrowthSeries s("ceil-npowlogn");
    s.set_eval([](long n) -> mpz_class {
        if (n < 1) throw ValidationError("n^{ln n} needs n >= 1");
        if (n == 1) return 1;
        // Value is exp((ln n)^2); pick precision past the integer part and
        // escalate until the ceiling is stable between two precisions.
        double l = std::log(static_cast<double>(n));
        long bits = static_cast<long>(l * l / std::log(2.0)) + 64;
        mpfr_prec_t p = std::max<long>(256, bits);
        for (int attempt = 0; attempt < 6; ++attempt, p += 256) {
            auto ceil_at = [n](mpfr_prec_t prec) {
                Real x(Real::Prec{prec});
                mpfr_set_si(x.get(), n, MPFR_RNDN);
                return exp(log(x) * log(x)).ceil_z();
            };
            mpz_class a = ceil_at(p), b = ceil_at(p + 128);
            if (a == b) return a;
        }
        throw InvariantError("ceil(n^{ln n}) did not stabilize at n=" + std::to_string(n));
    });
    return s;
}

}  // namespace liegrowth
