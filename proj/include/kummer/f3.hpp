#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace kummer {

using F3Vec = std::vector<std::uint8_t>;

inline std::uint8_t f3(long v) { return static_cast<std::uint8_t>(((v % 3) + 3) % 3); }

F3Vec f3_add(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b);
F3Vec f3_scale(std::span<const std::uint8_t> a, std::uint8_t c);
std::uint8_t f3_dot(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b);
bool f3_is_zero(std::span<const std::uint8_t> a);

class F3Matrix {
public:
    F3Matrix() = default;
    F3Matrix(std::size_t rows, std::size_t cols);
    static F3Matrix from_rows(const std::vector<F3Vec>& rows, std::size_t cols);
    static F3Matrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::uint8_t at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    void set(std::size_t i, std::size_t j, long v) { data_[i * cols_ + j] = f3(v); }
    F3Vec row(std::size_t i) const;
    std::vector<F3Vec> row_list() const;

    F3Vec apply(std::span<const std::uint8_t> x) const;
    F3Matrix operator*(const F3Matrix& o) const;
    F3Matrix transpose() const;
    bool operator==(const F3Matrix& o) const = default;

    // Reduced row echelon form; returns pivot columns.
    std::vector<std::size_t> rref();
    std::size_t rank() const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<std::uint8_t> data_;
};

// Right kernel {x : m x = 0}.
std::vector<F3Vec> kernel_f3(const F3Matrix& m);

// Any x with m x = b, if one exists.
std::optional<F3Vec> solve_f3(const F3Matrix& m, std::span<const std::uint8_t> b);

// Subspaces of F3^n given by spanning vectors.
std::vector<F3Vec> echelon_basis(const std::vector<F3Vec>& span, std::size_t n);
std::size_t span_dim(const std::vector<F3Vec>& span, std::size_t n);
bool span_contains(const std::vector<F3Vec>& span, std::span<const std::uint8_t> v, std::size_t n);
bool span_subset(const std::vector<F3Vec>& a, const std::vector<F3Vec>& b, std::size_t n);
bool span_equal(const std::vector<F3Vec>& a, const std::vector<F3Vec>& b, std::size_t n);
std::vector<F3Vec> span_intersection(const std::vector<F3Vec>& a, const std::vector<F3Vec>& b,
                                     std::size_t n);
// Coefficients c with sum c_i span_i = v, if v lies in the span.
std::optional<F3Vec> span_coordinates(const std::vector<F3Vec>& span,
                                      std::span<const std::uint8_t> v, std::size_t n);
// Linear functionals vanishing on the span.
std::vector<F3Vec> annihilator(const std::vector<F3Vec>& span, std::size_t n);

std::string to_string(std::span<const std::uint8_t> v);

}  // namespace kummer
