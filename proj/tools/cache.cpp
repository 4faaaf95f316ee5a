#include "cache.hpp"

#include "json.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>
#include <unistd.h>

namespace hktool {

namespace fs = std::filesystem;
using nlohmann::json;

std::uint64_t fnv1a64(const std::string& data)
{
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

namespace {

std::string hex(std::uint64_t h)
{
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

std::string rep_key(int n, std::uint32_t p, const hk::Weight& mu)
{
    std::string k = "grouprep-n" + std::to_string(n) + "-p" + std::to_string(p) + "-mu";
    for (std::size_t i = 0; i < mu.c.size(); ++i) k += (i ? "_" : "") + std::to_string(mu.c[i]);
    return k;
}

void write_int_vec(std::ostream& os, const hk::IntVec& v)
{
    os << v.size();
    for (int x : v) os << ' ' << x;
    os << '\n';
}

hk::IntVec read_int_vec(std::istream& is)
{
    std::size_t k;
    if (!(is >> k)) throw std::runtime_error("truncated vector");
    hk::IntVec v(k);
    for (auto& x : v)
        if (!(is >> x)) throw std::runtime_error("truncated vector");
    return v;
}

}  // namespace

std::string serialize_rep(const hk::GroupRep& v)
{
    std::ostringstream os;
    os << "grouprep 1\n" << v.n << ' ' << v.p << ' ' << v.dim << '\n';
    write_int_vec(os, v.mu.c);
    for (const auto& w : v.weights) write_int_vec(os, w.c);
    os << v.divided.size() << '\n';
    for (const auto& powers : v.divided) {
        os << powers.size() << '\n';
        for (const auto& m : powers) hk::write_matrix(os, m);
    }
    os << v.x.size() << '\n';
    for (const auto& m : v.x) hk::write_matrix(os, m);
    return os.str();
}

hk::GroupRep deserialize_rep(const std::string& text)
{
    std::istringstream is(text);
    std::string tag;
    int version;
    if (!(is >> tag >> version) || tag != "grouprep" || version != 1) throw std::runtime_error("not a grouprep artifact");
    hk::GroupRep v;
    if (!(is >> v.n >> v.p >> v.dim)) throw std::runtime_error("truncated header");
    v.mu.c = read_int_vec(is);
    for (std::size_t i = 0; i < v.dim; ++i) v.weights.push_back(hk::Weight{read_int_vec(is)});
    std::size_t k;
    if (!(is >> k)) throw std::runtime_error("truncated divided powers");
    v.divided.resize(k);
    for (auto& powers : v.divided) {
        std::size_t s;
        if (!(is >> s)) throw std::runtime_error("truncated divided powers");
        for (std::size_t i = 0; i < s; ++i) powers.push_back(hk::read_matrix(is));
    }
    if (!(is >> k)) throw std::runtime_error("truncated root elements");
    for (std::size_t i = 0; i < k; ++i) v.x.push_back(hk::read_matrix(is));
    return v;
}

void write_atomic(const fs::path& path, const std::string& data)
{
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << data;
        out.flush();
        if (!out) throw std::runtime_error("write failed for " + tmp.string());
    }
    fs::rename(tmp, path);
}

ArtifactCache::ArtifactCache(fs::path dir) : dir_(std::move(dir))
{
    if (enabled()) fs::create_directories(dir_);
}

hk::GroupRep ArtifactCache::simple_module(int n, std::uint32_t p, const hk::Weight& mu)
{
    if (!enabled()) return hk::build_simple_module(n, p, mu);
    const std::string key = rep_key(n, p, mu);
    const fs::path file = dir_ / (key + ".json");
    if (fs::exists(file)) {
        try {
            std::ifstream in(file, std::ios::binary);
            json j = json::parse(in);
            const std::string payload = j.at("payload").get<std::string>();
            if (j.at("key") != key || j.at("fnv1a64") != hex(fnv1a64(payload))) throw std::runtime_error("hash mismatch");
            hk::GroupRep v = deserialize_rep(payload);
            if (v.n != n || v.p != p || v.mu != mu) throw std::runtime_error("key mismatch");
            // a loaded module must carry the same certificate as a fresh one
            if (!hk::irreducibility_check(v).passed) throw std::runtime_error("certificate fails");
            ++hits_;
            return v;
        } catch (const std::exception&) {
            ++rejected_;
        }
    }
    ++misses_;
    hk::GroupRep v = hk::build_simple_module(n, p, mu);
    const std::string payload = serialize_rep(v);
    json j = {{"kind", "GroupRep"}, {"key", key}, {"fnv1a64", hex(fnv1a64(payload))}, {"payload", payload}};
    write_atomic(file, j.dump());
    return v;
}

}  // namespace hktool
