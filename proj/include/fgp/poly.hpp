#pragma once

#include <algorithm>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace fgp {

using cd = std::complex<double>;

// Dense univariate polynomial, coefficient i multiplies x^i.
template <class T>
class Poly {
public:
    Poly() = default;
    Poly(std::vector<T> c) : c_(std::move(c)) { trim(); }
    static Poly constant(const T& a) { return Poly(std::vector<T>{a}); }
    static Poly monomial(const T& a, std::size_t k)
    {
        std::vector<T> c(k + 1, T(0));
        c[k] = a;
        return Poly(std::move(c));
    }
    // (x - r)
    static Poly linear_root(const T& r) { return Poly(std::vector<T>{T(0) - r, T(1)}); }

    int degree() const { return c_.empty() ? -1 : int(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<T>& coeffs() const { return c_; }
    T operator[](std::size_t i) const { return i < c_.size() ? c_[i] : T(0); }
    T lead() const { return c_.empty() ? T(0) : c_.back(); }

    template <class U>
    U operator()(const U& x) const
    {
        U r = U(0);
        for (std::size_t i = c_.size(); i-- > 0;)
            r = r * x + U(c_[i]);
        return r;
    }

    Poly derivative() const
    {
        if (c_.size() <= 1)
            return {};
        std::vector<T> d(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i)
            d[i - 1] = c_[i] * T(int(i));
        return Poly(std::move(d));
    }

    Poly& operator+=(const Poly& o)
    {
        if (o.c_.size() > c_.size())
            c_.resize(o.c_.size(), T(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i)
            c_[i] += o.c_[i];
        trim();
        return *this;
    }
    Poly& operator-=(const Poly& o)
    {
        if (o.c_.size() > c_.size())
            c_.resize(o.c_.size(), T(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i)
            c_[i] -= o.c_[i];
        trim();
        return *this;
    }
    Poly& operator*=(const T& a)
    {
        for (auto& x : c_)
            x *= a;
        trim();
        return *this;
    }
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator-(Poly a)
    {
        for (auto& x : a.c_)
            x = T(0) - x;
        return a;
    }
    friend Poly operator*(Poly a, const T& s) { return a *= s; }
    friend Poly operator*(const T& s, Poly a) { return a *= s; }
    friend Poly operator*(const Poly& a, const Poly& b)
    {
        if (a.c_.empty() || b.c_.empty())
            return {};
        std::vector<T> r(a.c_.size() + b.c_.size() - 1, T(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                r[i + j] += a.c_[i] * b.c_[j];
        return Poly(std::move(r));
    }
    Poly pow(unsigned k) const
    {
        Poly r = constant(T(1));
        for (unsigned i = 0; i < k; ++i)
            r = r * *this;
        return r;
    }
    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

    // Synthetic division by (x - r); remainder is dropped.
    Poly deflate(const T& r) const
    {
        if (c_.size() <= 1)
            return {};
        std::vector<T> q(c_.size() - 1);
        T acc = c_.back();
        for (std::size_t i = c_.size() - 1; i-- > 0;) {
            q[i] = acc;
            acc = c_[i] + acc * r;
        }
        return Poly(std::move(q));
    }

    template <class U, class Fn>
    Poly<U> map(Fn f) const
    {
        std::vector<U> r;
        r.reserve(c_.size());
        for (const auto& x : c_)
            r.push_back(f(x));
        return Poly<U>(std::move(r));
    }

private:
    void trim()
    {
        while (!c_.empty() && c_.back() == T(0))
            c_.pop_back();
    }
    std::vector<T> c_;
};

// Dense bivariate polynomial; c[i][j] multiplies x^i y^j.
template <class T>
class BiPoly {
public:
    BiPoly() = default;
    BiPoly(std::size_t dx, std::size_t dy) : c_(dx + 1, std::vector<T>(dy + 1, T(0))) {}

    static BiPoly in_x(const Poly<T>& p)
    {
        BiPoly r(std::max(0, p.degree()), 0);
        for (int i = 0; i <= p.degree(); ++i)
            r.c_[i][0] = p[i];
        return r;
    }
    static BiPoly in_y(const Poly<T>& p)
    {
        BiPoly r(0, std::max(0, p.degree()));
        for (int j = 0; j <= p.degree(); ++j)
            r.c_[0][j] = p[j];
        return r;
    }

    std::size_t rows() const { return c_.size(); }
    std::size_t cols() const { return c_.empty() ? 0 : c_[0].size(); }
    T coeff(std::size_t i, std::size_t j) const
    {
        return i < rows() && j < cols() ? c_[i][j] : T(0);
    }
    T& at(std::size_t i, std::size_t j) { return c_.at(i).at(j); }

    int degree_x() const
    {
        for (std::size_t i = rows(); i-- > 0;)
            for (const auto& v : c_[i])
                if (v != T(0))
                    return int(i);
        return -1;
    }
    int degree_y() const
    {
        int d = -1;
        for (const auto& row : c_)
            for (std::size_t j = 0; j < row.size(); ++j)
                if (row[j] != T(0))
                    d = std::max(d, int(j));
        return d;
    }
    bool is_zero() const { return degree_x() < 0; }

    template <class U>
    U operator()(const U& x, const U& y) const
    {
        U r = U(0);
        for (std::size_t i = rows(); i-- > 0;) {
            U row = U(0);
            for (std::size_t j = cols(); j-- > 0;)
                row = row * y + U(c_[i][j]);
            r = r * x + row;
        }
        return r;
    }

    // Coefficient of y^j as a polynomial in x.
    Poly<T> y_coeff(std::size_t j) const
    {
        std::vector<T> r(rows(), T(0));
        for (std::size_t i = 0; i < rows(); ++i)
            r[i] = coeff(i, j);
        return Poly<T>(std::move(r));
    }
    // Substitute x = x0, leaving a polynomial in y.
    template <class U>
    Poly<U> at_x(const U& x0) const
    {
        std::vector<U> r(cols(), U(0));
        for (std::size_t j = 0; j < cols(); ++j) {
            U acc = U(0);
            for (std::size_t i = rows(); i-- > 0;)
                acc = acc * x0 + U(c_[i][j]);
            r[j] = acc;
        }
        return Poly<U>(std::move(r));
    }
    // Restriction to the diagonal y = x.
    Poly<T> diagonal() const
    {
        std::vector<T> r(rows() + cols(), T(0));
        for (std::size_t i = 0; i < rows(); ++i)
            for (std::size_t j = 0; j < cols(); ++j)
                r[i + j] += c_[i][j];
        return Poly<T>(std::move(r));
    }
    BiPoly swapped() const
    {
        BiPoly r(cols() ? cols() - 1 : 0, rows() ? rows() - 1 : 0);
        for (std::size_t i = 0; i < rows(); ++i)
            for (std::size_t j = 0; j < cols(); ++j)
                r.c_[j][i] = c_[i][j];
        return r;
    }

    friend BiPoly operator+(const BiPoly& a, const BiPoly& b)
    {
        BiPoly r(std::max(a.rows(), b.rows()) - 1, std::max(a.cols(), b.cols()) - 1);
        for (std::size_t i = 0; i < r.rows(); ++i)
            for (std::size_t j = 0; j < r.cols(); ++j)
                r.c_[i][j] = a.coeff(i, j) + b.coeff(i, j);
        return r;
    }
    friend BiPoly operator-(const BiPoly& a, const BiPoly& b)
    {
        BiPoly r(std::max(a.rows(), b.rows()) - 1, std::max(a.cols(), b.cols()) - 1);
        for (std::size_t i = 0; i < r.rows(); ++i)
            for (std::size_t j = 0; j < r.cols(); ++j)
                r.c_[i][j] = a.coeff(i, j) - b.coeff(i, j);
        return r;
    }
    friend BiPoly operator*(const BiPoly& a, const BiPoly& b)
    {
        if (a.c_.empty() || b.c_.empty())
            return {};
        BiPoly r(a.rows() + b.rows() - 2, a.cols() + b.cols() - 2);
        for (std::size_t i = 0; i < a.rows(); ++i)
            for (std::size_t j = 0; j < a.cols(); ++j) {
                if (a.c_[i][j] == T(0))
                    continue;
                for (std::size_t k = 0; k < b.rows(); ++k)
                    for (std::size_t l = 0; l < b.cols(); ++l)
                        r.c_[i + k][j + l] += a.c_[i][j] * b.c_[k][l];
            }
        return r;
    }
    friend BiPoly operator*(const T& s, BiPoly a)
    {
        for (auto& row : a.c_)
            for (auto& v : row)
                v *= s;
        return a;
    }

    template <class U, class Fn>
    BiPoly<U> map(Fn f) const
    {
        BiPoly<U> r(rows() ? rows() - 1 : 0, cols() ? cols() - 1 : 0);
        for (std::size_t i = 0; i < rows(); ++i)
            for (std::size_t j = 0; j < cols(); ++j)
                r.at(i, j) = f(c_[i][j]);
        return r;
    }

private:
    std::vector<std::vector<T>> c_;
};

}  // namespace fgp
