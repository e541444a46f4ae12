#pragma once

#include "chenbound/wu.hpp"

#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>

namespace chenbound::cache {

/// One cached result. `kind` is Psi1, Psi2 or I2; for I2 rows `i` is the
/// integral index 9..21, otherwise it is informational.
struct Entry {
    int i = 0;
    wu::WuParams params{};
    std::string kind;
    double phi_max = 0.0;
    double phi_low = 0.0;
    double psi_value = 0.0;
};

/// Store of Ψ and I₂ results. With a path it is loaded on construction and
/// written back by flush(), which replaces the file atomically. Safe to use
/// from several threads.
class PsiCache {
public:
    static constexpr const char* kHeader = "i,s,s_prime,k1,k2,k3,kind,phi_max,phi_low,psi_value";

    PsiCache() = default;  // in-memory only
    explicit PsiCache(std::filesystem::path file);

    PsiCache(const PsiCache&) = delete;
    PsiCache& operator=(const PsiCache&) = delete;

    /// Short token identifying everything that changes the cached numbers.
    static std::string signature(const wu::Settings& settings);

    /// <dir>/psi_<signature>.csv
    static std::filesystem::path file_for(const std::filesystem::path& dir,
                                          const wu::Settings& settings);

    std::optional<Entry> find(const std::string& kind, int i, const wu::WuParams& p) const;
    void put(const Entry& e);

    /// Writes pending entries. No-op for in-memory caches or when nothing changed.
    void flush();

    std::size_t size() const;
    const std::filesystem::path& path() const noexcept { return path_; }

private:
    static std::string key(const std::string& kind, int i, const wu::WuParams& p);

    mutable std::mutex mutex_;
    std::map<std::string, Entry> entries_;
    std::filesystem::path path_;
    bool dirty_ = false;
};

/// A Ψ value with the φ maximizer behind it (the I₁ maximizer for Ψ₁).
struct PsiResult {
    double value = 0.0;
    double phi_max = 0.0;
    double phi_low = 0.0;
};

/// Ψ₁ through the cache (cache may be null).
PsiResult cached_psi1(PsiCache* cache, double s, double s_prime, const wu::Settings& settings);

/// I₂,ᵢ maximum through the cache.
wu::PhiMax cached_i2_max(PsiCache* cache, int i, const wu::WuParams& p,
                         const wu::Settings& settings);

/// Ψ₂ through the cache; I₂ maxima are cached individually as well.
PsiResult cached_psi2(PsiCache* cache, const wu::WuParams& p, const wu::Settings& settings);

} // namespace chenbound::cache
