#pragma once

#include <string>

#include "json.hpp"
#include "liegrowth/liecomm.hpp"

namespace liegrowth {

// End-to-end run: word -> (optional letter reduction) -> factor language ->
// monomial growth -> centers -> commutator dims / quarter bounds -> groupoid
// checks -> growth-dimension estimate, with CSV/JSON/SVG artifacts.
struct PipelineConfig {
    std::string word = "fibonacci";  // library word name
    bool apply_sigma = false;        // reduce to the two-letter alphabet first
    std::size_t N = 40;              // factor-language horizon
    std::size_t L = 10000;           // scanned prefix length
    FieldDescriptor field = FieldDescriptor::Q();
    std::size_t lie_max = 10;       // top degree for commutator dims / bounds
    std::size_t center_max = 8;     // top degree for center checks
    int qdim_level = 3;
    std::size_t groupoid_max = 6;   // filtration depth
    int sandwich_cmax = 8;
    std::string out_dir = "out";
    std::size_t budget = 2000000;   // groupoid enumeration cap
};

// Validates horizons and budgets; throws ValidationError with a hint.
void validate_config(const PipelineConfig& cfg);

// Runs every stage, writes growth.csv / quarter.json / proxy.csv /
// filtration.csv / *.svg / summary.json under cfg.out_dir, and returns the
// summary.  Identical config implies byte-identical artifacts.
nlohmann::ordered_json run_pipeline(const PipelineConfig& cfg);

}  // namespace liegrowth
