#include "chenbound/buchstab.hpp"

#include "json.hpp"

#include <cmath>
#include <stdexcept>

namespace chenbound::buchstab {

namespace {

constexpr const char* kFormat = "chenbound.buchstab_spline";
constexpr int kVersion = 1;

} // namespace

std::string Spline::to_json() const {
    nlohmann::json doc;
    doc["format"] = kFormat;
    doc["version"] = kVersion;
    doc["degree"] = degree_;
    doc["intervals"] = intervals_;
    auto rows = nlohmann::json::array();
    for (int j = 2; j <= intervals_; ++j) {
        auto row = nlohmann::json::array();
        for (int m = 0; m <= degree_; ++m) row.push_back(coefficient(j, m));
        rows.push_back(std::move(row));
    }
    doc["coeffs"] = std::move(rows);
    doc["tail"] = tail_;
    doc["error_bound"] = error_bound_;
    // max_digits10 output keeps the round trip exact.
    return doc.dump(2);
}

Spline Spline::from_json(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("spline json: ") + e.what());
    }
    try {
        if (doc.at("format").get<std::string>() != kFormat) {
            throw std::invalid_argument("spline json: unexpected format tag");
        }
        if (doc.at("version").get<int>() != kVersion) {
            throw std::invalid_argument("spline json: unsupported version");
        }
        const int degree = doc.at("degree").get<int>();
        const int intervals = doc.at("intervals").get<int>();
        if (degree < 1 || intervals < 2) {
            throw std::invalid_argument("spline json: degree or intervals out of range");
        }
        const auto& rows = doc.at("coeffs");
        if (!rows.is_array() || rows.size() != static_cast<std::size_t>(intervals - 1)) {
            throw std::invalid_argument("spline json: coeffs must have intervals-1 rows");
        }
        std::vector<double> coeffs;
        coeffs.reserve(rows.size() * static_cast<std::size_t>(degree + 1));
        for (const auto& row : rows) {
            if (!row.is_array() || row.size() != static_cast<std::size_t>(degree + 1)) {
                throw std::invalid_argument("spline json: each coeffs row needs degree+1 entries");
            }
            for (const auto& v : row) coeffs.push_back(v.get<double>());
        }
        const double tail = doc.at("tail").get<double>();
        const double bound = doc.at("error_bound").get<double>();
        if (!std::isfinite(tail) || !(bound > 0.0)) {
            throw std::invalid_argument("spline json: bad tail or error_bound");
        }
        return Spline(degree, intervals, std::move(coeffs), tail, bound);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("spline json: ") + e.what());
    }
}

} // namespace chenbound::buchstab
