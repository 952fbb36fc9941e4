#include "liegrowth/pipeline.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "liegrowth/errors.hpp"
#include "liegrowth/groupoid.hpp"
#include "liegrowth/monomial.hpp"
#include "liegrowth/qdim.hpp"
#include "liegrowth/svg.hpp"
#include "liegrowth/words.hpp"

namespace liegrowth {

namespace {

using nlohmann::ordered_json;

// Stage bodies run after config validation; their validation failures are
// reported as stage errors with a remediation hint.
template <class F>
auto stage_guard(const char* name, F body) {
    try {
        return body();
    } catch (const StageError&) {
        throw;
    } catch (const ValidationError& e) {
        throw StageError(name, e.what(), "raise L or N in the config");
    }
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw StageError("report", "cannot open " + path, "check the output directory");
    out << text;
    if (!out) throw StageError("report", "failed writing " + path, "check disk space");
}

std::string q_str(const mpq_class& q) {
    std::ostringstream os;
    os << q;
    return os.str();
}

}  // namespace

void validate_config(const PipelineConfig& cfg) {
    library_word(cfg.word);  // throws for unknown names
    if (cfg.N < 32)
        throw ValidationError("N must be >= 32 (the dimension estimate needs 16 tail samples)");
    if (cfg.L < cfg.N) throw ValidationError("L must be >= N: raise L");
    std::size_t groupoid_horizon = 2 * cfg.groupoid_max + 3;
    if (cfg.L < groupoid_horizon)
        throw ValidationError("L must cover the groupoid window (need >= " +
                              std::to_string(groupoid_horizon) + "): raise L");
    if (cfg.lie_max < 4 || cfg.lie_max > cfg.N)
        throw ValidationError("lie_max must lie in [4, N]");
    if (cfg.center_max + 1 > cfg.N)
        throw ValidationError("center_max must be < N (centers look one degree up)");
    if (cfg.qdim_level < 1) throw ValidationError("qdim level must be >= 1");
    if (cfg.groupoid_max < 1) throw ValidationError("groupoid_max must be >= 1");
    if (cfg.sandwich_cmax < 1) throw ValidationError("sandwich_cmax must be >= 1");
    if (cfg.budget == 0) throw ValidationError("budget must be positive");
    if (cfg.out_dir.empty()) throw ValidationError("out_dir must not be empty");
}

ordered_json run_pipeline(const PipelineConfig& cfg) {
    validate_config(cfg);
    std::filesystem::create_directories(cfg.out_dir);
    auto path_of = [&](const char* f) {
        return (std::filesystem::path(cfg.out_dir) / f).string();
    };

    ordered_json summary;
    summary["schema"] = "liegrowth pipeline-summary v1";
    summary["config"] = {{"word", cfg.word},
                         {"apply_sigma", cfg.apply_sigma},
                         {"N", cfg.N},
                         {"L", cfg.L},
                         {"field", cfg.field.name()},
                         {"lie_max", cfg.lie_max},
                         {"center_max", cfg.center_max},
                         {"qdim_level", cfg.qdim_level},
                         {"groupoid_max", cfg.groupoid_max},
                         {"sandwich_cmax", cfg.sandwich_cmax},
                         {"budget", cfg.budget}};
    ordered_json& stages = summary["stages"] = ordered_json::array();

    // --- word -----------------------------------------------------------
    WordSource src = library_word(cfg.word);
    if (cfg.apply_sigma) src = stage_guard("word", [&] { return sigma_reduce(src); });
    stages.push_back({{"stage", "word"},
                      {"operation", cfg.apply_sigma ? "sigma_reduce(library_word)"
                                                    : "library_word"},
                      {"params", {{"name", cfg.word}}},
                      {"source", src.name},
                      {"letters", std::string(src.letters.begin(), src.letters.end())}});

    // --- factor language --------------------------------------------------
    FactorLanguage lang = stage_guard("language", [&] {
        return factor_language(src, cfg.N, cfg.L);
    });
    bool stable = stage_guard("language", [&] { return l_stable(src, cfg.N, cfg.L); });
    stages.push_back({{"stage", "language"},
                      {"operation", "factor_language"},
                      {"params", {{"N", cfg.N}, {"L", cfg.L}}},
                      {"l_stable", stable}});

    // --- monomial algebra growth ------------------------------------------
    MonomialAlgebra alg(lang);
    GrowthSeries gamma = stage_guard("growth", [&] {
        return algebra_growth(alg, cfg.N, /*with_unit=*/false);
    });
    bool growth_sandwich = true;
    {
        std::ostringstream csv;
        csv << "# liegrowth pipeline-growth v1\n";
        csv << "# source: " << lang.source_name() << "\n";
        csv << "n,complexity,gamma\n";
        for (std::size_t n = 1; n <= cfg.N; ++n) {
            mpz_class g = gamma.at(static_cast<long>(n));
            mpz_class c = static_cast<long>(lang.complexity(n));
            if (g < c || g > static_cast<long>(n) * c) growth_sandwich = false;
            csv << n << "," << c << "," << g << "\n";
        }
        write_text(path_of("growth.csv"), csv.str());
    }
    ordered_json nilp = ordered_json::object();
    for (char ch : lang.letters()) {
        try {
            nilp[std::string(1, ch)] = alg.nilpotency_degree(ch);
        } catch (const StageError&) {
            nilp[std::string(1, ch)] = nullptr;  // not nilpotent up to the horizon
        }
    }
    stages.push_back({{"stage", "growth"},
                      {"operation", "algebra_growth"},
                      {"params", {{"n_max", cfg.N}, {"with_unit", false}}},
                      {"csv", "growth.csv"},
                      {"sandwich_c_le_gamma_le_nc", growth_sandwich},
                      {"nilpotency_degree", nilp}});

    // --- graded center ------------------------------------------------------
    {
        ordered_json dims = ordered_json::array();
        bool all_zero = true;
        for (std::size_t n = 1; n <= cfg.center_max; ++n) {
            std::size_t d = stage_guard("center", [&] { return alg.center_component(n); });
            dims.push_back(d);
            if (d != 0) all_zero = false;
        }
        stages.push_back({{"stage", "center"},
                          {"operation", "center_component"},
                          {"params", {{"n", "1.." + std::to_string(cfg.center_max)}}},
                          {"dims", dims},
                          {"all_zero", all_zero}});
    }

    // --- commutator dimensions and the quarter bound ------------------------
    {
        ordered_json rows = ordered_json::array();
        bool all_pass = true;
        for (std::size_t n = 4; n <= cfg.lie_max; ++n) {
            QuarterBoundReport r = stage_guard("lie", [&] {
                return verify_quarter_bound(lang, n, cfg.field);
            });
            all_pass = all_pass && r.pass && r.pigeonhole_ok && r.kernel_ok;
            rows.push_back({{"n", r.n},
                            {"dimA", r.dim_A_nm2},
                            {"commDim", r.comm_dim},
                            {"bound", q_str(mpq_class(r.dim_A_nm2, 4))},
                            {"pass", r.pass},
                            {"margin", q_str(r.margin)},
                            {"pigeon_letter", std::string(1, r.pigeon_letter)},
                            {"side_dim", r.side_dim},
                            {"pigeonhole_ok", r.pigeonhole_ok},
                            {"kernel_dims", {r.kernel_dim[0], r.kernel_dim[1]}},
                            {"kernel_ok", r.kernel_ok},
                            {"field", cfg.field.name()}});
        }
        ordered_json quarter;
        quarter["schema"] = "liegrowth quarter v1";
        quarter["rows"] = rows;
        write_text(path_of("quarter.json"), quarter.dump(2) + "\n");
        stages.push_back({{"stage", "lie"},
                          {"operation", "verify_quarter_bound"},
                          {"params",
                           {{"n", "4.." + std::to_string(cfg.lie_max)},
                            {"field", cfg.field.name()}}},
                          {"json", "quarter.json"},
                          {"all_pass", all_pass}});
    }

    // --- commutator growth proxy ---------------------------------------------
    ProxyReport proxy = stage_guard("proxy", [&] {
        return lie_growth_proxy(lang, cfg.lie_max, cfg.field);
    });
    {
        std::ostringstream csv;
        csv << "# liegrowth pipeline-proxy v1\n";
        csv << "n,lower,proxy,upper\n";
        for (const auto& r : proxy.rows)
            csv << r.n << "," << r.lower_sum << "," << r.proxy << "," << r.upper_sum << "\n";
        write_text(path_of("proxy.csv"), csv.str());
        stages.push_back({{"stage", "proxy"},
                          {"operation", "lie_growth_proxy"},
                          {"params",
                           {{"N", cfg.lie_max}, {"field", cfg.field.name()}}},
                          {"csv", "proxy.csv"},
                          {"sandwich_ok", proxy.sandwich_ok}});
    }

    // --- groupoid convolution algebra -----------------------------------------
    {
        std::size_t g_hor = 2 * cfg.groupoid_max + 3;
        FactorLanguage g_lang =
            cfg.N >= g_hor ? lang : stage_guard("groupoid", [&] {
                return factor_language(src, g_hor, cfg.L);
            });
        GroupoidAlgebra groupoid(g_lang);

        GroupoidElement letter_sum, phi_sum;
        bool first = true;
        for (char ch : g_lang.letters()) {
            GroupoidElement d = groupoid.element(groupoid.letter_projection(ch));
            GroupoidElement p = groupoid.phi(std::string(1, ch));
            letter_sum = first ? d : groupoid.add(letter_sum, d);
            phi_sum = first ? p : groupoid.add(phi_sum, p);
            first = false;
        }
        bool partition_ok =
            groupoid.equal(letter_sum, groupoid.element(GroupoidAlgebra::unit()));
        bool phi_sum_ok =
            groupoid.equal(phi_sum, groupoid.element(GroupoidAlgebra::shift_fwd()));

        std::size_t inj_max = std::min<std::size_t>(cfg.groupoid_max, 8);
        bool injective = true;
        for (std::size_t n = 1; n <= inj_max && injective; ++n)
            injective = stage_guard("groupoid", [&] {
                return groupoid.phi_injectivity_check(n);
            });

        FiltrationResult filt = stage_guard("groupoid", [&] {
            return groupoid.filtration_growth(cfg.groupoid_max, cfg.sandwich_cmax,
                                              cfg.budget);
        });
        {
            std::ostringstream csv;
            csv << "# liegrowth pipeline-filtration v1\n";
            csv << "n,dim,lower,upper\n";
            for (std::size_t n = 1; n <= cfg.groupoid_max; ++n) {
                std::size_t lower = 0, upper = 0;
                for (const auto& row : filt.rows)
                    if (row.n == n) {
                        lower = row.lower;
                        upper = row.upper;
                    }
                csv << n << "," << filt.dims[n] << "," << lower << "," << upper << "\n";
            }
            write_text(path_of("filtration.csv"), csv.str());
        }

        std::size_t center_levels =
            std::min<std::size_t>({3, cfg.groupoid_max, (g_hor - 3) / 2});
        ordered_json centers = ordered_json::array();
        for (std::size_t lv = 1; lv <= center_levels; ++lv)
            centers.push_back(stage_guard("groupoid", [&] {
                return groupoid.truncated_center_check(lv);
            }));

        stages.push_back(
            {{"stage", "groupoid"},
             {"operation", "filtration_growth"},
             {"params",
              {{"N", cfg.groupoid_max},
               {"cmax", cfg.sandwich_cmax},
               {"budget", cfg.budget},
               {"horizon", g_hor}}},
             {"partition_of_unity", partition_ok},
             {"phi_letter_sum_is_shift", phi_sum_ok},
             {"phi_injective_to", inj_max},
             {"phi_injective", injective},
             {"csv", "filtration.csv"},
             {"sandwich_c",
              filt.sandwich_c ? ordered_json(*filt.sandwich_c) : ordered_json(nullptr)},
             {"bisections_seen", filt.bisections_seen},
             {"truncated_center_dims", centers}});

        std::vector<SvgSeries> fs(3);
        fs[0].label = "dim";
        fs[1].label = "lower";
        fs[2].label = "upper";
        for (std::size_t n = 1; n <= cfg.groupoid_max; ++n) {
            double x = static_cast<double>(n);
            fs[0].points.emplace_back(x, static_cast<double>(filt.dims[n]));
            for (const auto& row : filt.rows)
                if (row.n == n) {
                    fs[1].points.emplace_back(x, static_cast<double>(row.lower));
                    fs[2].points.emplace_back(x, static_cast<double>(row.upper));
                }
        }
        write_svg_lines(path_of("filtration.svg"),
                        "groupoid filtration growth: " + g_lang.source_name(), "n",
                        "dimension", fs, /*log_y=*/true);
    }

    // --- growth dimension against the comparison hierarchy ---------------------
    {
        DimEstimate est = stage_guard("qdim", [&] {
            return dim_estimate(cfg.qdim_level, log_series_from_growth(gamma));
        });
        ordered_json trace = ordered_json::array();
        for (std::size_t i = 0; i < est.trace.size(); ++i)
            trace.push_back({{"ln_n", est.trace[i].first},
                             {"alpha_hat", est.trace[i].second},
                             {"status", est.statuses[i]}});
        stages.push_back({{"stage", "qdim"},
                          {"operation", "dim_estimate"},
                          {"params",
                           {{"level", cfg.qdim_level},
                            {"series", gamma.tag()},
                            {"tail_fraction", 0.5}}},
                          {"dim", est.dim},
                          {"dimsup", est.dimsup},
                          {"window_begin", est.window_begin},
                          {"valid_in_window", est.valid_in_window},
                          {"trace", trace}});
    }

    // --- plots -------------------------------------------------------------
    {
        std::vector<SvgSeries> gs(3);
        gs[0].label = "c(n)";
        gs[1].label = "gamma(n)";
        gs[2].label = "n*c(n)";
        for (std::size_t n = 1; n <= cfg.N; ++n) {
            double x = static_cast<double>(n);
            double c = static_cast<double>(lang.complexity(n));
            gs[0].points.emplace_back(x, c);
            gs[1].points.emplace_back(x, gamma.at(static_cast<long>(n)).get_d());
            gs[2].points.emplace_back(x, static_cast<double>(n) * c);
        }
        write_svg_lines(path_of("growth.svg"),
                        "monomial algebra growth: " + lang.source_name(), "n",
                        "dimension", gs, /*log_y=*/true);

        std::vector<SvgSeries> ps(3);
        ps[0].label = "lower/4";
        ps[1].label = "proxy";
        ps[2].label = "upper";
        for (const auto& r : proxy.rows) {
            double x = static_cast<double>(r.n);
            ps[0].points.emplace_back(x, r.lower_sum.get_d() / 4.0);
            ps[1].points.emplace_back(x, r.proxy.get_d());
            ps[2].points.emplace_back(x, r.upper_sum.get_d());
        }
        write_svg_lines(path_of("proxy.svg"),
                        "commutator growth proxy: " + lang.source_name(), "n",
                        "dimension", ps, /*log_y=*/true);
        stages.push_back({{"stage", "plots"},
                          {"operation", "write_svg_lines"},
                          {"params", {{"log_y", true}}},
                          {"files", {"growth.svg", "filtration.svg", "proxy.svg"}}});
    }

    write_text(path_of("summary.json"), summary.dump(2) + "\n");
    return summary;
}

}  // namespace liegrowth
