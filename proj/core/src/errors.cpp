#include "chenbound/errors.hpp"

namespace chenbound {

namespace {

std::string join(const std::vector<std::string>& items) {
    std::string out = "constraint violation";
    const char* sep = ": ";
    for (const auto& item : items) {
        out += sep;
        out += item;
        sep = "; ";
    }
    return out;
}

} // namespace

ConstraintViolation::ConstraintViolation(std::vector<std::string> violations)
    : std::invalid_argument(join(violations)), violations_(std::move(violations)) {}

} // namespace chenbound
