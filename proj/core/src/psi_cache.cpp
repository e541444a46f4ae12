#include "chenbound/psi_cache.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace chenbound::cache {

namespace {

std::string number(double v, int digits) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

std::string optional_number(const std::optional<double>& v, int digits) {
    return v ? number(*v, digits) : std::string{};
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

std::optional<double> parse_optional(const std::string& s) {
    if (s.empty()) return std::nullopt;
    return std::stod(s);
}

// FNV-1a; only needs to be stable, not strong.
std::uint64_t fnv1a(const std::string& text) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

} // namespace

PsiCache::PsiCache(std::filesystem::path file) : path_(std::move(file)) {
    std::ifstream in(path_);
    if (!in) return;
    std::string line;
    if (!std::getline(in, line)) return;
    if (line != kHeader) {
        throw std::runtime_error("psi cache " + path_.string() + ": unexpected header");
    }
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto f = split(line);
        if (f.size() != 10) {
            throw std::runtime_error("psi cache " + path_.string() + ": malformed line " +
                                     std::to_string(lineno));
        }
        Entry e;
        e.i = std::stoi(f[0]);
        e.params.s = std::stod(f[1]);
        e.params.s_prime = std::stod(f[2]);
        e.params.k1 = parse_optional(f[3]);
        e.params.k2 = parse_optional(f[4]);
        e.params.k3 = parse_optional(f[5]);
        e.kind = f[6];
        e.phi_max = std::stod(f[7]);
        e.phi_low = std::stod(f[8]);
        e.psi_value = std::stod(f[9]);
        entries_[key(e.kind, e.i, e.params)] = e;
    }
}

std::string PsiCache::signature(const wu::Settings& settings) {
    const auto& q = settings.quad;
    const auto& sp = settings.omega();
    std::ostringstream os;
    os << "abs=" << number(q.abs_tol, 6) << ";rel=" << number(q.rel_tol, 6)
       << ";depth=" << q.max_depth << ";mc=" << q.mc_samples << ";N=" << sp.degree()
       << ";k=" << sp.intervals() << ";upper=" << settings.i2.upper_index
       << ";w20=" << (settings.i2.weight20_printed ? "printed" : "alternate");
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(os.str())));
    return buf;
}

std::filesystem::path PsiCache::file_for(const std::filesystem::path& dir,
                                         const wu::Settings& settings) {
    return dir / ("psi_" + signature(settings) + ".csv");
}

std::string PsiCache::key(const std::string& kind, int i, const wu::WuParams& p) {
    std::string k = kind;
    if (kind == "I2") k += "#" + std::to_string(i);
    k += "|" + number(p.s, 12) + "|" + number(p.s_prime, 12) + "|" + optional_number(p.k1, 12) +
         "|" + optional_number(p.k2, 12) + "|" + optional_number(p.k3, 12);
    return k;
}

std::optional<Entry> PsiCache::find(const std::string& kind, int i, const wu::WuParams& p) const {
    std::lock_guard lock(mutex_);
    auto it = entries_.find(key(kind, i, p));
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

void PsiCache::put(const Entry& e) {
    std::lock_guard lock(mutex_);
    entries_[key(e.kind, e.i, e.params)] = e;
    dirty_ = true;
}

std::size_t PsiCache::size() const {
    std::lock_guard lock(mutex_);
    return entries_.size();
}

void PsiCache::flush() {
    std::lock_guard lock(mutex_);
    if (path_.empty() || !dirty_) return;
    if (path_.has_parent_path()) std::filesystem::create_directories(path_.parent_path());
    auto tmp = path_;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw std::runtime_error("psi cache: cannot write " + tmp.string());
        out << kHeader << '\n';
        for (const auto& [k, e] : entries_) {
            out << e.i << ',' << number(e.params.s, 17) << ',' << number(e.params.s_prime, 17)
                << ',' << optional_number(e.params.k1, 17) << ','
                << optional_number(e.params.k2, 17) << ',' << optional_number(e.params.k3, 17)
                << ',' << e.kind << ',' << number(e.phi_max, 17) << ','
                << number(e.phi_low, 17) << ',' << number(e.psi_value, 17) << '\n';
        }
        if (!out.flush()) throw std::runtime_error("psi cache: write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path_);
    dirty_ = false;
}

PsiResult cached_psi1(PsiCache* cache, double s, double s_prime, const wu::Settings& settings) {
    const auto p = wu::WuParams::psi1(s, s_prime);
    if (cache) {
        if (auto hit = cache->find("Psi1", 0, p)) return {hit->psi_value, hit->phi_max, hit->phi_low};
    }
    const auto d = wu::psi1_detail(s, s_prime, settings);
    if (cache) cache->put({0, p, "Psi1", d.i1.phi, d.i1.phi_low, d.value});
    return {d.value, d.i1.phi, d.i1.phi_low};
}

wu::PhiMax cached_i2_max(PsiCache* cache, int i, const wu::WuParams& p,
                         const wu::Settings& settings) {
    if (cache) {
        if (auto hit = cache->find("I2", i, p)) return {hit->phi_max, hit->psi_value, hit->phi_low};
    }
    const auto m = wu::i2_max(i, p, settings);
    if (cache) cache->put({i, p, "I2", m.phi, m.phi_low, m.value});
    return m;
}

PsiResult cached_psi2(PsiCache* cache, const wu::WuParams& p, const wu::Settings& settings) {
    if (cache) {
        if (auto hit = cache->find("Psi2", 0, p)) return {hit->psi_value, hit->phi_max, hit->phi_low};
    }
    std::map<int, wu::PhiMax> known;
    for (int i = 9; i <= settings.i2.upper_index; ++i) known[i] = cached_i2_max(cache, i, p, settings);
    const auto d = wu::psi2_detail(p, settings, known);
    // Ψ₂ has no single φ; record the range of the individual thresholds instead.
    double low = 5.0;
    double high = 2.0;
    for (const auto& [i, m] : d.i2) {
        low = std::min(low, m.phi_low);
        high = std::max(high, m.phi);
    }
    if (cache) cache->put({0, p, "Psi2", high, low, d.value});
    return {d.value, high, low};
}

} // namespace chenbound::cache
