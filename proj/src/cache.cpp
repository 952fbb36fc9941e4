#include "liegrowth/cache.hpp"

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace liegrowth {

namespace {

constexpr const char* kMagic = "# liegrowth factor-language cache v1";

std::string fnv1a64_hex(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace

std::optional<std::string> cache_dir() {
    const char* dir = std::getenv("LIEGROWTH_CACHE_DIR");
    if (!dir || !*dir) return std::nullopt;
    return std::string(dir);
}

std::string cache_file_path(const std::string& source_name, std::size_t N, std::size_t L) {
    auto dir = cache_dir();
    if (!dir) return {};
    std::ostringstream name;
    name << fnv1a64_hex(source_name) << "_N" << N << "_L" << L << ".lang";
    return (std::filesystem::path(*dir) / name.str()).string();
}

std::optional<std::vector<std::vector<std::string>>> cache_load(
    const std::string& source_name, std::size_t N, std::size_t L) {
    const std::string path = cache_file_path(source_name, N, L);
    if (path.empty()) return std::nullopt;
    std::ifstream in(path);
    if (!in) return std::nullopt;

    std::string line;
    if (!std::getline(in, line) || line != kMagic) return std::nullopt;
    if (!std::getline(in, line) || line != "# source: " + source_name) return std::nullopt;
    std::size_t n_file = 0, l_file = 0;
    if (!std::getline(in, line)) return std::nullopt;
    if (std::sscanf(line.c_str(), "# N %zu L %zu", &n_file, &l_file) != 2) return std::nullopt;
    if (n_file != N || l_file != L) return std::nullopt;

    std::vector<std::vector<std::string>> factors(N + 1);
    factors[0] = {""};
    for (std::size_t n = 1; n <= N; ++n) {
        std::size_t len = 0, count = 0;
        if (!std::getline(in, line)) return std::nullopt;
        if (std::sscanf(line.c_str(), "n %zu %zu", &len, &count) != 2 || len != n)
            return std::nullopt;
        factors[n].reserve(count);
        for (std::size_t k = 0; k < count; ++k) {
            if (!std::getline(in, line) || line.size() != n) return std::nullopt;
            factors[n].push_back(line);
        }
    }
    return factors;
}

void cache_store(const std::string& source_name, std::size_t N, std::size_t L,
                 const std::vector<std::vector<std::string>>& factors) {
    const std::string path = cache_file_path(source_name, N, L);
    if (path.empty()) return;
    std::error_code ec;
    std::filesystem::create_directories(std::filesystem::path(path).parent_path(), ec);
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) return;  // cache is best effort
        out << kMagic << "\n";
        out << "# source: " << source_name << "\n";
        out << "# N " << N << " L " << L << "\n";
        for (std::size_t n = 1; n < factors.size(); ++n) {
            out << "n " << n << " " << factors[n].size() << "\n";
            for (const auto& f : factors[n]) out << f << "\n";
        }
    }
    std::filesystem::rename(tmp, path, ec);
    if (ec) std::filesystem::remove(tmp, ec);
}

}  // namespace liegrowth
