#pragma once

#include <array>
#include <compare>
#include <stdexcept>
#include <string>

namespace fgp {

using Quad = std::array<int, 4>;

// nu in N^4 with odd coordinate sum; cls is the index whose parity differs from the rest.
class TypeVector {
public:
    TypeVector() : v_{1, 0, 0, 0}, cls_(0) {}
    TypeVector(Quad v) : v_(v)
    {
        int odd = 0, sum = 0;
        for (int x : v_) {
            if (x < 0)
                throw std::invalid_argument("type vector entries must be non-negative");
            odd += x & 1;
            sum += x;
        }
        if ((sum & 1) == 0)
            throw std::invalid_argument("type vector must have odd coordinate sum: " + str());
        const int want = odd == 1 ? 1 : 0;
        cls_ = 0;
        for (int i = 0; i < 4; ++i)
            if ((v_[i] & 1) == want)
                cls_ = i;
    }
    TypeVector(int a, int b, int c, int d) : TypeVector(Quad{a, b, c, d}) {}

    const Quad& v() const { return v_; }
    int operator[](int i) const { return v_[i]; }
    int cls() const { return cls_; }
    std::string str() const
    {
        return "(" + std::to_string(v_[0]) + "," + std::to_string(v_[1]) + "," + std::to_string(v_[2]) + "," +
               std::to_string(v_[3]) + ")";
    }
    friend auto operator<=>(const TypeVector& a, const TypeVector& b) { return a.v_ <=> b.v_; }
    friend bool operator==(const TypeVector& a, const TypeVector& b) { return a.v_ == b.v_; }

private:
    Quad v_;
    int cls_;
};

class AlphaVector {
public:
    AlphaVector() : a_{0, 0, 0, 0} {}
    AlphaVector(Quad a) : a_(a)
    {
        for (int x : a_)
            if (x < 0)
                throw std::invalid_argument("alpha entries must be non-negative");
    }
    AlphaVector(int a, int b, int c, int d) : AlphaVector(Quad{a, b, c, d}) {}
    const Quad& a() const { return a_; }
    int operator[](int i) const { return a_[i]; }
    std::string str() const
    {
        return "(" + std::to_string(a_[0]) + "," + std::to_string(a_[1]) + "," + std::to_string(a_[2]) + "," +
               std::to_string(a_[3]) + ")";
    }
    friend auto operator<=>(const AlphaVector&, const AlphaVector&) = default;

private:
    Quad a_;
};

}  // namespace fgp
