#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <string>

namespace homfly {

/// Exact integer coefficient type.  Coefficient growth is exponential in the
/// crossing number, so fixed-width integers are not an option.
using Int = boost::multiprecision::cpp_int;

struct TriKey {
    int ea = 0;  ///< exponent of alpha
    int ez = 0;  ///< exponent of z
    int ed = 0;  ///< exponent of delta
    auto operator<=>(const TriKey&) const = default;
};

struct BiKey {
    int ea = 0;
    int ez = 0;
    auto operator<=>(const BiKey&) const = default;
};

/// Sparse Laurent polynomial in (alpha, z, delta) with exact integer
/// coefficients.  Terms are kept in canonical form: no zero coefficients,
/// iteration in lexicographic key order.  Values are immutable in spirit:
/// arithmetic returns new values, so sharing across threads is safe.
class TriLaurent {
public:
    TriLaurent() = default;

    static TriLaurent mono(Int coeff, int ea, int ez, int ed);
    static TriLaurent one() { return mono(1, 0, 0, 0); }

    bool is_zero() const { return terms_.empty(); }
    const std::map<TriKey, Int>& terms() const { return terms_; }

    /// Adds coeff to the term at key, erasing the term if it cancels.
    void add_term(const TriKey& key, const Int& coeff);

    TriLaurent& operator+=(const TriLaurent& rhs);
    TriLaurent& operator*=(const TriLaurent& rhs);

    friend TriLaurent operator+(TriLaurent lhs, const TriLaurent& rhs) {
        lhs += rhs;
        return lhs;
    }
    friend TriLaurent operator*(const TriLaurent& lhs, const TriLaurent& rhs);

    bool operator==(const TriLaurent&) const = default;

private:
    std::map<TriKey, Int> terms_;
};

/// Sparse Laurent polynomial in (alpha, z); same canonicalization rules as
/// TriLaurent.
class BiLaurent {
public:
    BiLaurent() = default;

    static BiLaurent mono(Int coeff, int ea, int ez);
    static BiLaurent one() { return mono(1, 0, 0); }

    bool is_zero() const { return terms_.empty(); }
    const std::map<BiKey, Int>& terms() const { return terms_; }

    void add_term(const BiKey& key, const Int& coeff);

    BiLaurent& operator+=(const BiLaurent& rhs);
    BiLaurent& operator*=(const BiLaurent& rhs);

    friend BiLaurent operator+(BiLaurent lhs, const BiLaurent& rhs) {
        lhs += rhs;
        return lhs;
    }
    friend BiLaurent operator*(const BiLaurent& lhs, const BiLaurent& rhs);

    bool operator==(const BiLaurent&) const = default;

private:
    std::map<BiKey, Int> terms_;
};

/// Replaces every delta^k (k >= 0) by ((alpha - alpha^-1) z^-1)^k via exact
/// binomial expansion.  Throws NegativeDeltaExponentError if any term carries
/// a negative delta exponent; negative exponents are legal only inside the
/// dynamic program, never at its root.
BiLaurent expand_delta(const TriLaurent& p);

enum class RenderStyle {
    Human,    ///< e.g. "a^2 + a^-2 - z^2 - 1"
    Machine,  ///< JSON list of [e_alpha, e_z, coeff-as-decimal-string]
};

std::string render(const BiLaurent& p, RenderStyle style = RenderStyle::Human);
std::string render(const TriLaurent& p, RenderStyle style = RenderStyle::Human);

/// Parses the machine rendering back into a polynomial.
BiLaurent parse_bilaurent_machine(const std::string& text);

}  // namespace homfly
