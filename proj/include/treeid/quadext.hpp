#pragma once

#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>

#include "treeid/rational.hpp"

namespace treeid {

struct EvalError : std::runtime_error {
    explicit EvalError(const std::string& what) : std::runtime_error(what) {}
};

// Division by an exact zero at one evaluation point; the caller resamples.
struct DegenerateEvaluation : EvalError {
    explicit DegenerateEvaluation(const std::string& what) : EvalError(what) {}
};

// A negative radicand: the evaluation point is not from a valid covariance
// model.
struct InvalidModelPoint : EvalError {
    explicit InvalidModelPoint(const std::string& what) : EvalError(what) {}
};

// Nested incompatible radicals or other shapes outside the supported
// quadratic extension.
struct UnsupportedExpression : EvalError {
    explicit UnsupportedExpression(const std::string& what) : EvalError(what) {}
};

// Exact value u + v*sqrt(d) with u, v, d rational and d >= 0; sqrt(d) is the
// nonnegative real root. Normal form: d is not a perfect square and v != 0,
// or v == 0 and d == 0.
class QuadExt {
  public:
    QuadExt() : u_(0), v_(0), d_(0) {}
    QuadExt(Rational u) : u_(std::move(u)), v_(0), d_(0) {}  // NOLINT: implicit by design
    QuadExt(Rational u, Rational v, Rational d)
        : u_(std::move(u)), v_(std::move(v)), d_(std::move(d)) {
        normalize();
    }

    const Rational& u() const { return u_; }
    const Rational& v() const { return v_; }
    const Rational& d() const { return d_; }

    bool is_zero() const { return u_ == 0 && v_ == 0; }
    bool is_rational() const { return v_ == 0; }

    const Rational& rational() const {
        if (!is_rational()) throw UnsupportedExpression("value is irrational");
        return u_;
    }

    // Exact sign of u + v*sqrt(d).
    int sign() const {
        if (v_ == 0) return sgn(u_);
        if (u_ == 0) return sgn(v_);
        int su = sgn(u_);
        int sv = sgn(v_);
        if (su == sv) return su;
        // Opposite signs: compare u^2 against v^2 d. Equality cannot occur in
        // normal form (d is not a perfect square).
        return u_ * u_ > v_ * v_ * d_ ? su : sv;
    }

    QuadExt operator-() const {
        QuadExt r;
        r.u_ = -u_;
        r.v_ = -v_;
        r.d_ = d_;
        return r;
    }

    friend QuadExt operator+(const QuadExt& x, const QuadExt& y) {
        auto [xv, yv, d] = align(x, y);
        QuadExt r;
        r.u_ = x.u_ + y.u_;
        r.v_ = xv + yv;
        r.d_ = d;
        r.normalize();
        return r;
    }

    friend QuadExt operator-(const QuadExt& x, const QuadExt& y) { return x + (-y); }

    friend QuadExt operator*(const QuadExt& x, const QuadExt& y) {
        auto [xv, yv, d] = align(x, y);
        QuadExt r;
        r.u_ = x.u_ * y.u_ + xv * yv * d;
        r.v_ = x.u_ * yv + y.u_ * xv;
        r.d_ = d;
        r.normalize();
        return r;
    }

    friend QuadExt operator/(const QuadExt& x, const QuadExt& y) {
        if (y.is_zero()) throw DegenerateEvaluation("division by exact zero");
        auto [xv, yv, d] = align(x, y);
        // 1/(a + b sqrt(d)) = (a - b sqrt(d)) / (a^2 - b^2 d); the norm is
        // nonzero because d is not a perfect square.
        Rational norm = y.u_ * y.u_ - yv * yv * d;
        if (norm == 0) throw DegenerateEvaluation("division by exact zero");
        QuadExt r;
        r.u_ = (x.u_ * y.u_ - xv * yv * d) / norm;
        r.v_ = (xv * y.u_ - x.u_ * yv) / norm;
        r.d_ = d;
        r.normalize();
        return r;
    }

    // Nonnegative square root; defined for rational arguments only.
    static QuadExt sqrt_of(const QuadExt& x) {
        if (!x.is_rational())
            throw UnsupportedExpression("nested radical: sqrt of an irrational value");
        if (sgn(x.u_) < 0)
            throw InvalidModelPoint("negative radicand: " + to_string(x.u_));
        return QuadExt(Rational(0), Rational(1), x.u_);
    }

    friend bool operator==(const QuadExt& x, const QuadExt& y) {
        if (x.u_ != y.u_) return false;
        if ((x.v_ == 0) != (y.v_ == 0)) return false;
        if (x.v_ == 0) return true;
        return sgn(x.v_) == sgn(y.v_) && x.v_ * x.v_ * x.d_ == y.v_ * y.v_ * y.d_;
    }

    friend bool operator!=(const QuadExt& x, const QuadExt& y) { return !(x == y); }

    std::string str() const {
        if (v_ == 0) return to_string(u_);
        return to_string(u_) + " + " + to_string(v_) + "*sqrt(" + to_string(d_) + ")";
    }

  private:
    // Brings two values onto a common radicand, rescaling when the radicands
    // differ by a perfect square factor. Returns (x.v', y.v', d).
    static std::tuple<Rational, Rational, Rational> align(const QuadExt& x, const QuadExt& y) {
        if (x.v_ == 0 && y.v_ == 0) return {x.v_, y.v_, Rational(0)};
        if (x.v_ == 0) return {x.v_, y.v_, y.d_};
        if (y.v_ == 0) return {x.v_, y.v_, x.d_};
        if (x.d_ == y.d_) return {x.v_, y.v_, x.d_};
        if (auto r = exact_sqrt(x.d_ / y.d_)) return {x.v_ * *r, y.v_, y.d_};
        throw UnsupportedExpression("incompatible radicands " + to_string(x.d_) + " and " +
                                    to_string(y.d_));
    }

    void normalize() {
        if (v_ != 0 && sgn(d_) < 0) throw InvalidModelPoint("negative radicand");
        if (v_ == 0 || d_ == 0) {
            v_ = 0;
            d_ = 0;
            return;
        }
        if (auto r = exact_sqrt(d_)) {
            u_ += v_ * *r;
            v_ = 0;
            d_ = 0;
        }
    }

    Rational u_, v_, d_;
};

}  // namespace treeid
