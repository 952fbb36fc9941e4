#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace liegrowth {

// Factor-language disk cache.  Active only when LIEGROWTH_CACHE_DIR is set;
// files are keyed by (hash of source description, N, L) and store the sorted
// factor lists per length in a line-oriented text format.

std::optional<std::string> cache_dir();

std::string cache_file_path(const std::string& source_name, std::size_t N, std::size_t L);

std::optional<std::vector<std::vector<std::string>>> cache_load(
    const std::string& source_name, std::size_t N, std::size_t L);

void cache_store(const std::string& source_name, std::size_t N, std::size_t L,
                 const std::vector<std::vector<std::string>>& factors);

}  // namespace liegrowth
