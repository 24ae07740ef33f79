#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace modlie {

// Ordered list of coordinate names. The position of a name is its variable
// index everywhere else in the library; the monomial order and all printed
// output follow this declaration order. Charts may be empty (points).
class Chart {
public:
    Chart() = default;
    explicit Chart(std::vector<std::string> names);

    int dim() const { return static_cast<int>(names_.size()); }
    const std::vector<std::string>& names() const { return names_; }
    const std::string& name(int i) const { return names_.at(static_cast<std::size_t>(i)); }
    std::optional<int> indexOf(std::string_view name) const;

    bool operator==(const Chart& other) const { return names_ == other.names_; }

private:
    std::vector<std::string> names_;
};

using ChartPtr = std::shared_ptr<const Chart>;

ChartPtr makeChart(std::vector<std::string> names);

// (a.names, b.names) in one chart; throws DomainError on clashes.
ChartPtr concatCharts(const ChartPtr& a, const ChartPtr& b);
ChartPtr concatCharts(const ChartPtr& a, const ChartPtr& b, const ChartPtr& c);

// Copy of `a` with every name suffixed.
ChartPtr suffixChart(const ChartPtr& a, const std::string& suffix);

bool isValidVarName(std::string_view name);

} // namespace modlie
