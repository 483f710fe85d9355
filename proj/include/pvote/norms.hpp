#ifndef PVOTE_NORMS_HPP
#define PVOTE_NORMS_HPP

#include <cmath>
#include <cstdlib>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "bigint.hpp"
#include "core.hpp"

namespace pvote {

/// Exponent of the norm. Integral values take the exact big-integer path.
class PExponent {
  public:
    static constexpr unsigned max_exact = 100000;

    static PExponent integer(unsigned p) {
        if (p == 0) throw input_error("p must be positive");
        if (p > max_exact) throw input_error("integer p above " + std::to_string(max_exact));
        return PExponent(static_cast<double>(p), p);
    }

    static PExponent real(double p) {
        if (!(p > 0) || !std::isfinite(p)) throw input_error("p must be a positive number");
        if (p == std::floor(p) && p <= max_exact) return integer(static_cast<unsigned>(p));
        return PExponent(p, std::nullopt);
    }

    /// Positive decimal such as "2", "3.0" or "0.5".
    static PExponent parse(std::string_view text) {
        std::string s(text);
        char* end = nullptr;
        const double v = std::strtod(s.c_str(), &end);
        if (s.empty() || end != s.c_str() + s.size()) throw input_error("p '" + s + "' is not a decimal number");
        return real(v);
    }

    double value() const { return value_; }
    bool is_integer() const { return integer_.has_value(); }
    unsigned as_integer() const {
        if (!integer_) throw input_error("p is not an integer");
        return *integer_;
    }
    /// 0 < p < 1: allowed, but outside the range where the norm behaves as a norm.
    bool below_one() const { return value_ < 1.0; }

    friend bool operator==(const PExponent&, const PExponent&) = default;

  private:
    PExponent(double v, std::optional<unsigned> i) : value_(v), integer_(i) {}
    double value_;
    std::optional<unsigned> integer_;
};

/// Signed Q-sum: exact at integer p, floating otherwise.
struct QValue {
    std::optional<BigInt> exact;
    double approx = 0.0;

    static QValue from_exact(BigInt v) {
        QValue q;
        q.approx = v.convert_to<double>();
        q.exact = std::move(v);
        return q;
    }
};

namespace detail {

template <class F>
void for_each_upper(const MarginMatrix& m, const Ordering& o, F&& f) {
    if (o.size() != m.size()) throw input_error("ordering length does not match candidate count");
    for (std::size_t r = 0; r < o.size(); ++r)
        for (std::size_t c = r + 1; c < o.size(); ++c) f(m.at(o[r], o[c]));
}

inline double real_power(Margin magnitude, double p) {
    return magnitude == 0 ? 0.0 : std::exp(p * std::log(static_cast<double>(magnitude)));
}

} // namespace detail

/// Sum of |m|^p over the negative upper-triangle entries under `ordering`.
inline BigInt negative_mass(const MarginMatrix& m, const Ordering& o, unsigned p) {
    BigInt s = 0;
    detail::for_each_upper(m, o, [&](Margin v) {
        if (v < 0) s += ipow(-v, p);
    });
    return s;
}

inline BigInt positive_mass(const MarginMatrix& m, const Ordering& o, unsigned p) {
    BigInt s = 0;
    detail::for_each_upper(m, o, [&](Margin v) {
        if (v > 0) s += ipow(v, p);
    });
    return s;
}

inline double negative_mass_real(const MarginMatrix& m, const Ordering& o, double p) {
    double s = 0;
    detail::for_each_upper(m, o, [&](Margin v) {
        if (v < 0) s += detail::real_power(-v, p);
    });
    return s;
}

inline double positive_mass_real(const MarginMatrix& m, const Ordering& o, double p) {
    double s = 0;
    detail::for_each_upper(m, o, [&](Margin v) {
        if (v > 0) s += detail::real_power(v, p);
    });
    return s;
}

/// Sum of |m_ij|^p over all pairs; independent of the ordering.
inline BigInt total_mass(const MarginMatrix& m, unsigned p) {
    BigInt s = 0;
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = i + 1; j < m.size(); ++j) s += ipow(std::abs(m.at(i, j)), p);
    return s;
}

/// p-norm of the margins that go against `ordering`; 0 when none do.
inline double p_norm(const MarginMatrix& m, const Ordering& o, const PExponent& p) {
    if (p.is_integer()) return root_of(negative_mass(m, o, p.as_integer()), p.value());
    const double s = negative_mass_real(m, o, p.value());
    return s == 0 ? 0.0 : std::pow(s, 1.0 / p.value());
}

/// p-norm of the margins that agree with `ordering`.
inline double positive_p_norm(const MarginMatrix& m, const Ordering& o, const PExponent& p) {
    if (p.is_integer()) return root_of(positive_mass(m, o, p.as_integer()), p.value());
    const double s = positive_mass_real(m, o, p.value());
    return s == 0 ? 0.0 : std::pow(s, 1.0 / p.value());
}

/// Exact sum of sign(m')|m'|^p over the upper triangle of the permuted matrix.
inline QValue q_sum(const MarginMatrix& m, const Ordering& o, unsigned p) {
    if (p == 0) throw input_error("p must be positive");
    BigInt s = 0;
    detail::for_each_upper(m, o, [&](Margin v) {
        if (v > 0) s += ipow(v, p);
        else if (v < 0) s -= ipow(-v, p);
    });
    return QValue::from_exact(std::move(s));
}

/// Floating Q-sum for non-integer p; not authoritative.
inline QValue q_sum_real(const MarginMatrix& m, const Ordering& o, double p) {
    QValue q;
    detail::for_each_upper(m, o, [&](Margin v) {
        if (v > 0) q.approx += detail::real_power(v, p);
        else if (v < 0) q.approx -= detail::real_power(-v, p);
    });
    return q;
}

/// Nonnegative, non-decreasing weight tabulated over margin magnitudes.
class WeightFunction {
  public:
    explicit WeightFunction(std::map<Margin, Rational> table) : table_(std::move(table)) {
        const Rational* prev = nullptr;
        for (const auto& [mag, w] : table_) {
            if (mag < 0) throw input_error("weight function is defined on magnitudes only");
            if (w < 0) throw input_error("weight function must be nonnegative");
            if (prev && w < *prev) throw input_error("weight function must be non-decreasing");
            prev = &w;
        }
    }

    /// Tabulate `f` over the magnitudes that occur in `m`.
    template <class F>
    static WeightFunction tabulate(const MarginMatrix& m, F&& f) {
        std::map<Margin, Rational> t;
        for (std::size_t i = 0; i < m.size(); ++i)
            for (std::size_t j = i + 1; j < m.size(); ++j) {
                const Margin mag = std::abs(m.at(i, j));
                if (!t.count(mag)) t.emplace(mag, Rational(f(mag)));
            }
        return WeightFunction(std::move(t));
    }

    static WeightFunction power(const MarginMatrix& m, unsigned p) {
        return tabulate(m, [p](Margin mag) { return Rational(ipow(mag, p)); });
    }

    static WeightFunction constant(const MarginMatrix& m, Rational c) {
        return tabulate(m, [c](Margin) { return c; });
    }

    bool defined_at(Margin magnitude) const { return table_.count(magnitude) != 0; }

    const Rational& operator()(Margin magnitude) const {
        auto it = table_.find(magnitude);
        if (it == table_.end()) throw input_error("weight function undefined at magnitude " + std::to_string(magnitude));
        return it->second;
    }

  private:
    std::map<Margin, Rational> table_;
};

/// Sum of sign(m')·f(|m'|) over the upper triangle of the permuted matrix.
inline Rational q_f_sum(const MarginMatrix& m, const Ordering& o, const WeightFunction& f) {
    Rational s = 0;
    detail::for_each_upper(m, o, [&](Margin v) {
        if (v > 0) s += f(v);
        else if (v < 0) s -= f(-v);
    });
    return s;
}

} // namespace pvote

#endif // PVOTE_NORMS_HPP
