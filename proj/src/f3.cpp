#include "kummer/f3.hpp"

#include <stdexcept>

namespace kummer {

F3Vec f3_add(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
    if (a.size() != b.size()) throw std::invalid_argument("f3_add size mismatch");
    F3Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = static_cast<std::uint8_t>((a[i] + b[i]) % 3);
    return r;
}

F3Vec f3_scale(std::span<const std::uint8_t> a, std::uint8_t c) {
    F3Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = static_cast<std::uint8_t>((a[i] * c) % 3);
    return r;
}

std::uint8_t f3_dot(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
    if (a.size() != b.size()) throw std::invalid_argument("f3_dot size mismatch");
    unsigned s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return static_cast<std::uint8_t>(s % 3);
}

bool f3_is_zero(std::span<const std::uint8_t> a) {
    for (auto x : a)
        if (x) return false;
    return true;
}

F3Matrix::F3Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

F3Matrix F3Matrix::from_rows(const std::vector<F3Vec>& rows, std::size_t cols) {
    F3Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw std::invalid_argument("ragged F3 rows");
        for (std::size_t j = 0; j < cols; ++j) m.set(i, j, rows[i][j]);
    }
    return m;
}

F3Matrix F3Matrix::identity(std::size_t n) {
    F3Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

F3Vec F3Matrix::row(std::size_t i) const {
    return F3Vec(data_.begin() + static_cast<long>(i * cols_),
                 data_.begin() + static_cast<long>((i + 1) * cols_));
}

std::vector<F3Vec> F3Matrix::row_list() const {
    std::vector<F3Vec> out;
    for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
    return out;
}

F3Vec F3Matrix::apply(std::span<const std::uint8_t> x) const {
    if (x.size() != cols_) throw std::invalid_argument("F3Matrix::apply size mismatch");
    F3Vec r(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        unsigned s = 0;
        for (std::size_t j = 0; j < cols_; ++j) s += at(i, j) * x[j];
        r[i] = static_cast<std::uint8_t>(s % 3);
    }
    return r;
}

F3Matrix F3Matrix::operator*(const F3Matrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("F3Matrix product shape mismatch");
    F3Matrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < o.cols_; ++j) {
            unsigned s = 0;
            for (std::size_t t = 0; t < cols_; ++t) s += at(i, t) * o.at(t, j);
            r.set(i, j, s);
        }
    return r;
}

F3Matrix F3Matrix::transpose() const {
    F3Matrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r.set(j, i, at(i, j));
    return r;
}

std::vector<std::size_t> F3Matrix::rref() {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
        std::size_t p = r;
        while (p < rows_ && at(p, c) == 0) ++p;
        if (p == rows_) continue;
        if (p != r)
            for (std::size_t j = 0; j < cols_; ++j) std::swap(data_[p * cols_ + j], data_[r * cols_ + j]);
        // 1 and 2 are their own inverses mod 3
        const std::uint8_t inv = at(r, c);
        for (std::size_t j = 0; j < cols_; ++j) set(r, j, at(r, j) * inv);
        for (std::size_t i = 0; i < rows_; ++i) {
            if (i == r || at(i, c) == 0) continue;
            const std::uint8_t f = at(i, c);
            for (std::size_t j = 0; j < cols_; ++j) set(i, j, at(i, j) - f * at(r, j));
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

std::size_t F3Matrix::rank() const {
    F3Matrix m = *this;
    return m.rref().size();
}

std::vector<F3Vec> kernel_f3(const F3Matrix& m) {
    F3Matrix e = m;
    auto pivots = e.rref();
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<F3Vec> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        F3Vec v(m.cols(), 0);
        v[free] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = f3(-static_cast<long>(e.at(r, free)));
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<F3Vec> solve_f3(const F3Matrix& m, std::span<const std::uint8_t> b) {
    if (b.size() != m.rows()) throw std::invalid_argument("solve_f3 size mismatch");
    F3Matrix aug(m.rows(), m.cols() + 1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) aug.set(i, j, m.at(i, j));
        aug.set(i, m.cols(), b[i]);
    }
    auto pivots = aug.rref();
    F3Vec x(m.cols(), 0);
    for (std::size_t r = 0; r < pivots.size(); ++r) {
        if (pivots[r] == m.cols()) return std::nullopt;
        x[pivots[r]] = aug.at(r, m.cols());
    }
    return x;
}

std::vector<F3Vec> echelon_basis(const std::vector<F3Vec>& span, std::size_t n) {
    if (span.empty()) return {};
    F3Matrix m = F3Matrix::from_rows(span, n);
    auto pivots = m.rref();
    std::vector<F3Vec> out;
    for (std::size_t r = 0; r < pivots.size(); ++r) out.push_back(m.row(r));
    return out;
}

std::size_t span_dim(const std::vector<F3Vec>& span, std::size_t n) {
    return echelon_basis(span, n).size();
}

bool span_contains(const std::vector<F3Vec>& span, std::span<const std::uint8_t> v, std::size_t n) {
    auto ext = span;
    ext.emplace_back(v.begin(), v.end());
    return span_dim(ext, n) == span_dim(span, n);
}

bool span_subset(const std::vector<F3Vec>& a, const std::vector<F3Vec>& b, std::size_t n) {
    for (const auto& v : a)
        if (!span_contains(b, v, n)) return false;
    return true;
}

bool span_equal(const std::vector<F3Vec>& a, const std::vector<F3Vec>& b, std::size_t n) {
    return span_subset(a, b, n) && span_subset(b, a, n);
}

std::vector<F3Vec> annihilator(const std::vector<F3Vec>& span, std::size_t n) {
    if (span.empty()) {
        std::vector<F3Vec> all;
        for (std::size_t i = 0; i < n; ++i) {
            F3Vec v(n, 0);
            v[i] = 1;
            all.push_back(v);
        }
        return all;
    }
    return kernel_f3(F3Matrix::from_rows(span, n));
}

std::vector<F3Vec> span_intersection(const std::vector<F3Vec>& a, const std::vector<F3Vec>& b,
                                     std::size_t n) {
    // a ∩ b = annihilator(annihilator(a) + annihilator(b))
    auto fa = annihilator(a, n);
    auto fb = annihilator(b, n);
    fa.insert(fa.end(), fb.begin(), fb.end());
    return echelon_basis(annihilator(fa, n), n);
}

std::optional<F3Vec> span_coordinates(const std::vector<F3Vec>& span,
                                      std::span<const std::uint8_t> v, std::size_t n) {
    if (span.empty()) {
        if (f3_is_zero(v)) return F3Vec{};
        return std::nullopt;
    }
    F3Matrix m = F3Matrix::from_rows(span, n).transpose();
    return solve_f3(m, v);
}

std::string to_string(std::span<const std::uint8_t> v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += static_cast<char>('0' + v[i]);
    }
    return s + ")";
}

}  // namespace kummer
