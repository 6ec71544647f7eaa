#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace hyperreg {

/// Exact non-negative counts (copies, extensions, moment sums).
using Count = boost::multiprecision::cpp_int;
/// Exact densities.
using Rational = boost::multiprecision::cpp_rational;

/// A vertex addressed as (class, local index); all objects are labelled.
struct Vertex {
    std::uint32_t cls = 0;
    std::uint32_t idx = 0;

    friend auto operator<=>(const Vertex&, const Vertex&) = default;
};

/// Kernel execution policy. `serial` is the reference path kept for testing
/// and benchmarking; both paths return identical results.
enum class Execution { serial, parallel };

/// Default upper bound on the size of a single vertex class.
inline constexpr std::size_t kDefaultClassCap = 4096;

/// Malformed object: same-class edge, closure violation, edge outside its parent graph.
class StructuralError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the domain of a definition (empty subset, non-induced pattern, ...).
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Request exceeds a configured enumeration cap; caller has to pick a cheaper mode.
class CapacityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Text input error anchored at a line.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

inline double to_double(const Rational& q) { return q.convert_to<double>(); }
inline double to_double(const Count& c) { return c.convert_to<double>(); }

/// Rational printed as "p/q" (or "p" when integral).
inline std::string to_string(const Rational& q) {
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    if (denominator(q) == 1) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

inline Rational make_rational(const Count& num, const Count& den) {
    return Rational(num, den);
}

}  // namespace hyperreg
