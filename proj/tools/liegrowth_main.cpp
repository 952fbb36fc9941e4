#include <cstdlib>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "liegrowth/errors.hpp"
#include "liegrowth/groupoid.hpp"
#include "liegrowth/liecomm.hpp"
#include "liegrowth/monomial.hpp"
#include "liegrowth/pipeline.hpp"
#include "liegrowth/qdim.hpp"
#include "liegrowth/series.hpp"
#include "liegrowth/words.hpp"

namespace {

using namespace liegrowth;
using nlohmann::ordered_json;

// Shared source selection flags.
struct SourceArgs {
    std::string source = "fibonacci";
    bool sigma = false;
    std::size_t scan = 10000;

    void attach(CLI::App* cmd) {
        cmd->add_option("--source", source, "library word name")
            ->capture_default_str();
        cmd->add_flag("--sigma", sigma, "reduce to the two-letter alphabet first");
        cmd->add_option("--scan", scan, "prefix length scanned for factors")
            ->capture_default_str();
    }
    WordSource resolve() const {
        WordSource src = library_word(source);
        return sigma ? sigma_reduce(src) : src;
    }
};

void print_series(const GrowthSeries& s, const std::string& out) {
    if (!out.empty()) {
        write_series_csv(out, s);
        return;
    }
    std::cout << "# liegrowth series v1\n# tag: " << s.tag() << "\nn,value\n";
    for (const auto& [n, v] : s.samples()) std::cout << n << "," << v << "\n";
}

FieldDescriptor parse_field(const std::string& name) {
    if (name == "q" || name == "Q") return FieldDescriptor::Q();
    if (name.rfind("gf", 0) == 0)
        return FieldDescriptor::GF(std::stol(name.substr(2)));
    throw ValidationError("unknown field '" + name + "' (use q or gf<prime>)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"growth calculator for algebras built from infinite words"};
    app.set_config("--config", "", "INI config file (sections per subcommand; flags override)");
    app.require_subcommand(1);
    std::string cache_dir_opt;
    app.add_option("--cache-dir", cache_dir_opt,
                   "directory for the factor-language cache (sets LIEGROWTH_CACHE_DIR)");

    // --- words -------------------------------------------------------------
    CLI::App* words = app.add_subcommand("words", "factor languages of library words");
    CLI::App* wc = words->add_subcommand("complexity", "factor counts c(1..max) as CSV");
    SourceArgs wc_src;
    wc_src.attach(wc);
    std::size_t wc_max = 20;
    std::string wc_out;
    wc->add_option("--max", wc_max, "largest factor length")->capture_default_str();
    wc->add_option("--out", wc_out, "write CSV here instead of stdout");
    wc->callback([&] {
        FactorLanguage lang = factor_language(wc_src.resolve(), wc_max, wc_src.scan);
        GrowthSeries s("complexity-" + lang.source_name());
        for (std::size_t n = 1; n <= wc_max; ++n)
            s.set_value(static_cast<long>(n), static_cast<long>(lang.complexity(n)));
        print_series(s, wc_out);
    });
    CLI::App* wf = words->add_subcommand("factors", "list the factors of one length");
    SourceArgs wf_src;
    wf_src.attach(wf);
    std::size_t wf_len = 4;
    wf->add_option("--length", wf_len, "factor length")->capture_default_str();
    wf->callback([&] {
        FactorLanguage lang = factor_language(wf_src.resolve(), wf_len, wf_src.scan);
        for (const auto& f : lang.at(wf_len)) std::cout << f << "\n";
    });
    CLI::App* wl = words->add_subcommand("list", "library word names");
    wl->callback([] {
        for (const auto& n : library_word_names()) std::cout << n << "\n";
    });

    // --- growth --------------------------------------------------------------
    CLI::App* growth = app.add_subcommand("growth", "monomial algebra growth series as CSV");
    SourceArgs g_src;
    g_src.attach(growth);
    std::size_t g_max = 40;
    bool g_unital = false;
    std::string g_out;
    growth->add_option("--max", g_max, "largest degree")->capture_default_str();
    growth->add_flag("--unital", g_unital, "count the unit in degree 0");
    growth->add_option("--out", g_out, "write CSV here instead of stdout");
    growth->callback([&] {
        FactorLanguage lang = factor_language(g_src.resolve(), g_max, g_src.scan);
        MonomialAlgebra alg(lang);
        print_series(algebra_growth(alg, g_max, g_unital), g_out);
    });

    // --- monomial ----------------------------------------------------------
    CLI::App* monomial = app.add_subcommand("monomial", "monomial algebra structure checks");
    CLI::App* mc = monomial->add_subcommand("center", "graded center dimensions");
    SourceArgs mc_src;
    mc_src.attach(mc);
    std::size_t mc_max = 8;
    mc->add_option("--max", mc_max, "largest degree")->capture_default_str();
    mc->callback([&] {
        FactorLanguage lang = factor_language(mc_src.resolve(), mc_max + 1, mc_src.scan);
        MonomialAlgebra alg(lang);
        ordered_json out;
        out["source"] = lang.source_name();
        out["center_dims"] = ordered_json::array();
        for (std::size_t n = 1; n <= mc_max; ++n)
            out["center_dims"].push_back(alg.center_component(n));
        std::cout << out.dump(2) << "\n";
    });
    CLI::App* mn = monomial->add_subcommand("nilpotency", "nilpotency degree per letter");
    SourceArgs mn_src;
    mn_src.attach(mn);
    std::size_t mn_max = 16;
    mn->add_option("--max", mn_max, "search horizon")->capture_default_str();
    mn->callback([&] {
        FactorLanguage lang = factor_language(mn_src.resolve(), mn_max, mn_src.scan);
        MonomialAlgebra alg(lang);
        ordered_json out;
        out["source"] = lang.source_name();
        for (char ch : lang.letters())
            out[std::string(1, ch)] = alg.nilpotency_degree(ch);
        std::cout << out.dump(2) << "\n";
    });

    // --- lie ------------------------------------------------------------------
    CLI::App* lie = app.add_subcommand("lie", "commutator subalgebra dimensions");
    CLI::App* lq = lie->add_subcommand("quarter", "quarter-bound pass/fail table");
    SourceArgs lq_src;
    lq_src.attach(lq);
    std::size_t lq_max = 10;
    std::string lq_field = "q";
    lq->add_option("--max", lq_max, "largest degree")->capture_default_str();
    lq->add_option("--field", lq_field, "q or gf<prime>")->capture_default_str();
    lq->callback([&] {
        FactorLanguage lang = factor_language(lq_src.resolve(), lq_max, lq_src.scan);
        FieldDescriptor field = parse_field(lq_field);
        std::cout << "n\tdimA\tcommDim\tbound\tpass\n";
        for (std::size_t n = 4; n <= lq_max; ++n) {
            QuarterBoundReport r = verify_quarter_bound(lang, n, field);
            std::ostringstream bound;
            bound << mpq_class(r.dim_A_nm2, 4);
            std::cout << r.n << "\t" << r.dim_A_nm2 << "\t" << r.comm_dim << "\t"
                      << bound.str() << "\t" << (r.pass ? "pass" : "FAIL") << "\n";
        }
    });
    CLI::App* ld = lie->add_subcommand("dims", "commutator dimensions as CSV");
    SourceArgs ld_src;
    ld_src.attach(ld);
    std::size_t ld_max = 10;
    std::string ld_field = "q", ld_out;
    ld->add_option("--max", ld_max, "largest degree")->capture_default_str();
    ld->add_option("--field", ld_field, "q or gf<prime>")->capture_default_str();
    ld->add_option("--out", ld_out, "write CSV here instead of stdout");
    ld->callback([&] {
        FactorLanguage lang = factor_language(ld_src.resolve(), ld_max, ld_src.scan);
        FieldDescriptor field = parse_field(ld_field);
        GrowthSeries s("liecomm-" + lang.source_name() + "-" + field.name());
        for (std::size_t n = 2; n <= ld_max; ++n)
            s.set_value(static_cast<long>(n), commutator_dim(lang, n, field));
        print_series(s, ld_out);
    });

    // --- groupoid ---------------------------------------------------------------
    CLI::App* groupoid_cmd =
        app.add_subcommand("groupoid", "convolution algebra identities and growth");
    SourceArgs gp_src;
    gp_src.attach(groupoid_cmd);
    std::size_t gp_max = 6;
    int gp_cmax = 8;
    groupoid_cmd->add_option("--max", gp_max, "filtration depth")->capture_default_str();
    groupoid_cmd->add_option("--cmax", gp_cmax, "largest sandwich constant tried")
        ->capture_default_str();
    groupoid_cmd->callback([&] {
        std::size_t horizon = 2 * gp_max + 3;
        FactorLanguage lang = factor_language(gp_src.resolve(), horizon, gp_src.scan);
        GroupoidAlgebra g(lang);
        ordered_json out;
        out["source"] = lang.source_name();
        GroupoidElement letter_sum, phi_sum;
        bool first = true;
        for (char ch : lang.letters()) {
            GroupoidElement d = g.element(g.letter_projection(ch));
            GroupoidElement p = g.phi(std::string(1, ch));
            letter_sum = first ? d : g.add(letter_sum, d);
            phi_sum = first ? p : g.add(phi_sum, p);
            first = false;
        }
        out["partition_of_unity"] = g.equal(letter_sum, g.element(GroupoidAlgebra::unit()));
        out["phi_letter_sum_is_shift"] =
            g.equal(phi_sum, g.element(GroupoidAlgebra::shift_fwd()));
        bool injective = true;
        for (std::size_t n = 1; n <= std::min<std::size_t>(gp_max, 8) && injective; ++n)
            injective = g.phi_injectivity_check(n);
        out["phi_injective"] = injective;
        FiltrationResult filt = g.filtration_growth(gp_max, gp_cmax);
        out["dims"] = std::vector<std::size_t>(filt.dims.begin() + 1, filt.dims.end());
        out["sandwich_c"] =
            filt.sandwich_c ? ordered_json(*filt.sandwich_c) : ordered_json(nullptr);
        std::cout << out.dump(2) << "\n";
    });

    // --- qdim ----------------------------------------------------------------
    CLI::App* qdim_cmd =
        app.add_subcommand("qdim", "growth dimension of a series against the hierarchy");
    int qd_level = 3;
    double qd_alpha = 0.0, qd_tail = 0.5;
    std::string qd_series;
    qdim_cmd->add_option("--level", qd_level, "hierarchy level q")->capture_default_str();
    qdim_cmd->add_option("--alpha", qd_alpha, "reference alpha recorded in the report");
    qdim_cmd->add_option("--series", qd_series, "growth series CSV")->required();
    qdim_cmd->add_option("--tail", qd_tail, "tail fraction used for the window")
        ->capture_default_str();
    qdim_cmd->callback([&] {
        GrowthSeries s = read_series_csv(qd_series);
        DimEstimate est = dim_estimate(qd_level, log_series_from_growth(s), qd_tail);
        ordered_json out;
        out["level"] = est.q;
        out["series"] = s.tag();
        if (qd_alpha > 0) out["alpha_ref"] = qd_alpha;
        out["window"] = {{"begin", est.window_begin},
                         {"size", est.trace.size() - est.window_begin},
                         {"valid", est.valid_in_window}};
        out["dim"] = est.dim;
        out["dimsup"] = est.dimsup;
        out["alpha_hat"] = ordered_json::array();
        for (std::size_t i = 0; i < est.trace.size(); ++i)
            out["alpha_hat"].push_back({{"ln_n", est.trace[i].first},
                                        {"value", est.trace[i].second},
                                        {"status", est.statuses[i]}});
        std::cout << out.dump(2) << "\n";
    });

    // --- pipeline --------------------------------------------------------------
    CLI::App* pipe = app.add_subcommand("pipeline", "end-to-end run with artifacts");
    PipelineConfig cfg;
    std::string pipe_field = "q";
    pipe->add_option("--word", cfg.word, "library word name")->capture_default_str();
    pipe->add_flag("--sigma", cfg.apply_sigma, "reduce to the two-letter alphabet first");
    pipe->add_option("--max", cfg.N, "factor-language horizon")->capture_default_str();
    pipe->add_option("--scan", cfg.L, "prefix length scanned for factors")
        ->capture_default_str();
    pipe->add_option("--field", pipe_field, "q or gf<prime>")->capture_default_str();
    pipe->add_option("--lie-max", cfg.lie_max, "top degree for commutator checks")
        ->capture_default_str();
    pipe->add_option("--center-max", cfg.center_max, "top degree for center checks")
        ->capture_default_str();
    pipe->add_option("--level", cfg.qdim_level, "hierarchy level for the dim estimate")
        ->capture_default_str();
    pipe->add_option("--groupoid-max", cfg.groupoid_max, "filtration depth")
        ->capture_default_str();
    pipe->add_option("--cmax", cfg.sandwich_cmax, "largest sandwich constant tried")
        ->capture_default_str();
    pipe->add_option("--out", cfg.out_dir, "output directory")->capture_default_str();
    pipe->add_option("--budget", cfg.budget, "groupoid enumeration cap")
        ->capture_default_str();
    pipe->callback([&] {
        cfg.field = parse_field(pipe_field);
        ordered_json summary = run_pipeline(cfg);
        std::cout << "wrote " << cfg.out_dir << "/summary.json\n";
        for (const auto& st : summary["stages"])
            std::cout << "stage " << st["stage"].get<std::string>() << ": ok\n";
    });

    // Apply the cache directory before any subcommand callback runs.
    for (int i = 1; i < argc; ++i) {
        std::string a = argv[i];
        if (a == "--cache-dir" && i + 1 < argc)
            setenv("LIEGROWTH_CACHE_DIR", argv[i + 1], 1);
        else if (a.rfind("--cache-dir=", 0) == 0)
            setenv("LIEGROWTH_CACHE_DIR", a.substr(12).c_str(), 1);
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 1;
    } catch (const StageError& e) {
        std::cerr << "stage '" << e.stage() << "' failed: " << e.what() << "\n";
        return 2;
    } catch (const InvariantError& e) {
        std::cerr << "invariant violated: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
