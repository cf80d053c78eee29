#pragma once

#include <algorithm>
#include <vector>

#include "hkd/errors.hpp"
#include "hkd/rational.hpp"

namespace hkd {

// Dense univariate polynomial with exact rational coefficients, low to
// high; the zero polynomial is the empty list.
struct RationalPoly {
    std::vector<Rational> coeffs;

    RationalPoly() = default;
    explicit RationalPoly(std::vector<Rational> c) : coeffs(std::move(c)) { normalize(); }

    static RationalPoly constant(const Rational& c) { return RationalPoly({c}); }
    static RationalPoly linear(const Rational& c0, const Rational& c1) {
        return RationalPoly({c0, c1});
    }

    void normalize() {
        while (!coeffs.empty() && coeffs.back() == 0)
            coeffs.pop_back();
    }

    bool is_zero() const { return coeffs.empty(); }

    Rational eval(const Rational& x) const {
        Rational acc(0);
        for (std::size_t i = coeffs.size(); i-- > 0;)
            acc = acc * x + coeffs[i];
        return acc;
    }

    RationalPoly operator+(const RationalPoly& o) const {
        std::vector<Rational> c(std::max(coeffs.size(), o.coeffs.size()), Rational(0));
        for (std::size_t i = 0; i < coeffs.size(); ++i)
            c[i] += coeffs[i];
        for (std::size_t i = 0; i < o.coeffs.size(); ++i)
            c[i] += o.coeffs[i];
        return RationalPoly(std::move(c));
    }

    RationalPoly operator-(const RationalPoly& o) const {
        std::vector<Rational> c(std::max(coeffs.size(), o.coeffs.size()), Rational(0));
        for (std::size_t i = 0; i < coeffs.size(); ++i)
            c[i] += coeffs[i];
        for (std::size_t i = 0; i < o.coeffs.size(); ++i)
            c[i] -= o.coeffs[i];
        return RationalPoly(std::move(c));
    }

    RationalPoly operator*(const RationalPoly& o) const {
        if (is_zero() || o.is_zero())
            return RationalPoly();
        std::vector<Rational> c(coeffs.size() + o.coeffs.size() - 1, Rational(0));
        for (std::size_t i = 0; i < coeffs.size(); ++i)
            for (std::size_t j = 0; j < o.coeffs.size(); ++j)
                c[i + j] += coeffs[i] * o.coeffs[j];
        return RationalPoly(std::move(c));
    }

    bool operator==(const RationalPoly& o) const { return coeffs == o.coeffs; }

    RationalPoly antiderivative() const {
        std::vector<Rational> c(coeffs.size() + 1, Rational(0));
        for (std::size_t i = 0; i < coeffs.size(); ++i)
            c[i + 1] = coeffs[i] / make_rational(static_cast<long>(i + 1));
        return RationalPoly(std::move(c));
    }
};

struct Piece {
    Rational from;
    Rational to;
    RationalPoly poly;
};

// Piecewise polynomial with rational breakpoints, zero outside its pieces.
// Stored canonically: pieces sorted and disjoint, zero pieces dropped,
// touching pieces with equal polynomials merged — so equality of canonical
// forms is equality of functions.
class PiecewiseFunction {
public:
    PiecewiseFunction() = default;

    static PiecewiseFunction from_pieces(std::vector<Piece> raw) {
        std::vector<Piece> kept;
        for (auto& p : raw) {
            if (p.from > p.to)
                throw InvalidInput("piece with from > to");
            if (p.from == p.to || p.poly.is_zero())
                continue;
            kept.push_back(std::move(p));
        }
        std::sort(kept.begin(), kept.end(),
                  [](const Piece& a, const Piece& b) { return a.from < b.from; });
        for (std::size_t i = 0; i + 1 < kept.size(); ++i)
            if (kept[i].to > kept[i + 1].from)
                throw InvalidInput("overlapping pieces");
        PiecewiseFunction f;
        for (auto& p : kept) {
            if (!f.pieces_.empty() && f.pieces_.back().to == p.from &&
                f.pieces_.back().poly == p.poly)
                f.pieces_.back().to = p.to;
            else
                f.pieces_.push_back(std::move(p));
        }
        return f;
    }

    const std::vector<Piece>& pieces() const { return pieces_; }
    bool is_zero() const { return pieces_.empty(); }

    Rational eval(const Rational& x) const {
        for (const auto& p : pieces_) {
            if (x < p.from)
                return Rational(0);
            if (x < p.to)
                return p.poly.eval(x);
        }
        return Rational(0);
    }

    Rational support_start() const {
        return pieces_.empty() ? Rational(0) : pieces_.front().from;
    }
    Rational support_end() const { return pieces_.empty() ? Rational(0) : pieces_.back().to; }

    Rational integrate() const {
        Rational acc(0);
        for (const auto& p : pieces_) {
            RationalPoly F = p.poly.antiderivative();
            acc += F.eval(p.to) - F.eval(p.from);
        }
        return acc;
    }

    bool operator==(const PiecewiseFunction& o) const {
        if (pieces_.size() != o.pieces_.size())
            return false;
        for (std::size_t i = 0; i < pieces_.size(); ++i)
            if (pieces_[i].from != o.pieces_[i].from || pieces_[i].to != o.pieces_[i].to ||
                !(pieces_[i].poly == o.pieces_[i].poly))
                return false;
        return true;
    }

    template <typename Op>
    static PiecewiseFunction combine(const PiecewiseFunction& a, const PiecewiseFunction& b,
                                     Op op) {
        std::vector<Rational> cuts;
        for (const auto& p : a.pieces_) {
            cuts.push_back(p.from);
            cuts.push_back(p.to);
        }
        for (const auto& p : b.pieces_) {
            cuts.push_back(p.from);
            cuts.push_back(p.to);
        }
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
        std::vector<Piece> out;
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
            const Rational& u = cuts[i];
            const Rational& v = cuts[i + 1];
            RationalPoly pa = a.poly_on(u);
            RationalPoly pb = b.poly_on(u);
            RationalPoly pc = op(pa, pb);
            if (!pc.is_zero())
                out.push_back({u, v, std::move(pc)});
        }
        return from_pieces(std::move(out));
    }

    PiecewiseFunction operator+(const PiecewiseFunction& o) const {
        return combine(*this, o, [](const RationalPoly& x, const RationalPoly& y) { return x + y; });
    }
    PiecewiseFunction operator-(const PiecewiseFunction& o) const {
        return combine(*this, o, [](const RationalPoly& x, const RationalPoly& y) { return x - y; });
    }
    PiecewiseFunction operator*(const PiecewiseFunction& o) const {
        return combine(*this, o, [](const RationalPoly& x, const RationalPoly& y) { return x * y; });
    }

    // multiply every piece by a globally defined polynomial factor
    PiecewiseFunction scaled_by(const RationalPoly& factor) const {
        std::vector<Piece> out;
        for (const auto& p : pieces_) {
            RationalPoly prod = p.poly * factor;
            if (!prod.is_zero())
                out.push_back({p.from, p.to, std::move(prod)});
        }
        return from_pieces(std::move(out));
    }

private:
    // polynomial in effect on the piece containing u (pieces never straddle
    // combine() cut points, so checking the left endpoint is enough)
    RationalPoly poly_on(const Rational& u) const {
        for (const auto& p : pieces_) {
            if (u < p.from)
                break;
            if (u < p.to)
                return p.poly;
        }
        return RationalPoly();
    }

    std::vector<Piece> pieces_;
};

} // namespace hkd
