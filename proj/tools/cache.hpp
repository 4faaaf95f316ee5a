// On-disk cache for simple modules, keyed by (n, p, mu) and validated by a
// content hash on every load.
#pragma once

#include "hk/repmod.hpp"

#include <cstdint>
#include <filesystem>
#include <string>

namespace hktool {

std::uint64_t fnv1a64(const std::string& data);

std::string serialize_rep(const hk::GroupRep& v);
hk::GroupRep deserialize_rep(const std::string& text);

// Writes to a temporary file in the same directory, then renames.
void write_atomic(const std::filesystem::path& path, const std::string& data);

class ArtifactCache {
public:
    explicit ArtifactCache(std::filesystem::path dir = {});

    bool enabled() const { return !dir_.empty(); }
    hk::GroupRep simple_module(int n, std::uint32_t p, const hk::Weight& mu);

    std::size_t hits() const { return hits_; }
    std::size_t misses() const { return misses_; }
    std::size_t rejected() const { return rejected_; }

private:
    std::filesystem::path dir_;
    std::size_t hits_ = 0, misses_ = 0, rejected_ = 0;
};

}  // namespace hktool
