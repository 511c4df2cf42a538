#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace vicheck
{
    class IlpError : public std::invalid_argument
    {
        public:
            using std::invalid_argument::invalid_argument;
    };

    /// coeffs . x <= bound
    struct LinearRow
    {
        std::vector<std::int64_t> coeffs;
        std::int64_t bound = 0;
    };

    struct LinearSystem
    {
        static constexpr std::int64_t unbounded_below = std::numeric_limits<std::int64_t>::min();
        static constexpr std::int64_t unbounded_above = std::numeric_limits<std::int64_t>::max();

        std::vector<LinearRow> rows;
        std::vector<std::int64_t> lo, hi;
        std::vector<std::string> names;

        auto dimension() const -> int { return static_cast<int>(lo.size()); }

        /// Returns the index of the new variable.
        auto add_variable(std::int64_t lower, std::int64_t upper, std::string name = "") -> int;

        auto add_row(std::vector<std::int64_t> coeffs, std::int64_t bound) -> void;
        /// coeffs . x >= bound, stored negated.
        auto add_row_at_least(std::vector<std::int64_t> coeffs, std::int64_t bound) -> void;
        auto add_equality(const std::vector<std::int64_t> & coeffs, std::int64_t value) -> void;
    };

    auto satisfies(const LinearSystem & sys, const std::vector<std::int64_t> & point) -> bool;

    /// Exact integer feasibility by branch and bound with bound propagation.
    /// Throws IlpError for unbounded variables or arithmetic overflow.
    auto feasible(const LinearSystem & sys) -> std::optional<std::vector<std::int64_t>>;

    /// LP-like text dump.
    auto to_text(const LinearSystem & sys) -> std::string;
}
