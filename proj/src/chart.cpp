#include "modlie/chart.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "modlie/errors.hpp"

namespace modlie {

bool isValidVarName(std::string_view name) {
    if (name.empty()) return false;
    if (!(std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_')) return false;
    return std::all_of(name.begin() + 1, name.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    });
}

Chart::Chart(std::vector<std::string> names) : names_(std::move(names)) {
    std::set<std::string> seen;
    for (const auto& n : names_) {
        if (!isValidVarName(n)) throw DomainError("invalid coordinate name '" + n + "'");
        if (!seen.insert(n).second) throw DomainError("duplicate coordinate name '" + n + "'");
    }
}

std::optional<int> Chart::indexOf(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return static_cast<int>(i);
    return std::nullopt;
}

ChartPtr makeChart(std::vector<std::string> names) {
    return std::make_shared<const Chart>(std::move(names));
}

ChartPtr concatCharts(const ChartPtr& a, const ChartPtr& b) {
    std::vector<std::string> names = a->names();
    names.insert(names.end(), b->names().begin(), b->names().end());
    return makeChart(std::move(names));
}

ChartPtr concatCharts(const ChartPtr& a, const ChartPtr& b, const ChartPtr& c) {
    std::vector<std::string> names = a->names();
    names.insert(names.end(), b->names().begin(), b->names().end());
    names.insert(names.end(), c->names().begin(), c->names().end());
    return makeChart(std::move(names));
}

ChartPtr suffixChart(const ChartPtr& a, const std::string& suffix) {
    std::vector<std::string> names;
    names.reserve(a->names().size());
    for (const auto& n : a->names()) names.push_back(n + suffix);
    return makeChart(std::move(names));
}

} // namespace modlie
