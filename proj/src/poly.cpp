#include "homfly/poly.hpp"

#include <json.hpp>

#include <algorithm>
#include <sstream>
#include <vector>

#include "homfly/errors.hpp"

namespace homfly {

TriLaurent TriLaurent::mono(Int coeff, int ea, int ez, int ed) {
    TriLaurent p;
    if (coeff != 0) p.terms_.emplace(TriKey{ea, ez, ed}, std::move(coeff));
    return p;
}

void TriLaurent::add_term(const TriKey& key, const Int& coeff) {
    if (coeff == 0) return;
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        terms_.emplace(key, coeff);
    } else {
        it->second += coeff;
        if (it->second == 0) terms_.erase(it);
    }
}

TriLaurent& TriLaurent::operator+=(const TriLaurent& rhs) {
    for (const auto& [k, c] : rhs.terms_) add_term(k, c);
    return *this;
}

TriLaurent operator*(const TriLaurent& lhs, const TriLaurent& rhs) {
    TriLaurent out;
    for (const auto& [ka, ca] : lhs.terms_) {
        for (const auto& [kb, cb] : rhs.terms_) {
            out.add_term(TriKey{ka.ea + kb.ea, ka.ez + kb.ez, ka.ed + kb.ed},
                         ca * cb);
        }
    }
    return out;
}

TriLaurent& TriLaurent::operator*=(const TriLaurent& rhs) {
    *this = *this * rhs;
    return *this;
}

BiLaurent BiLaurent::mono(Int coeff, int ea, int ez) {
    BiLaurent p;
    if (coeff != 0) p.terms_.emplace(BiKey{ea, ez}, std::move(coeff));
    return p;
}

void BiLaurent::add_term(const BiKey& key, const Int& coeff) {
    if (coeff == 0) return;
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        terms_.emplace(key, coeff);
    } else {
        it->second += coeff;
        if (it->second == 0) terms_.erase(it);
    }
}

BiLaurent& BiLaurent::operator+=(const BiLaurent& rhs) {
    for (const auto& [k, c] : rhs.terms_) add_term(k, c);
    return *this;
}

BiLaurent operator*(const BiLaurent& lhs, const BiLaurent& rhs) {
    BiLaurent out;
    for (const auto& [ka, ca] : lhs.terms_) {
        for (const auto& [kb, cb] : rhs.terms_) {
            out.add_term(BiKey{ka.ea + kb.ea, ka.ez + kb.ez}, ca * cb);
        }
    }
    return out;
}

BiLaurent& BiLaurent::operator*=(const BiLaurent& rhs) {
    *this = *this * rhs;
    return *this;
}

BiLaurent expand_delta(const TriLaurent& p) {
    BiLaurent out;
    for (const auto& [k, c] : p.terms()) {
        if (k.ed < 0) {
            throw NegativeDeltaExponentError(
                "negative delta exponent " + std::to_string(k.ed) +
                " survived to delta expansion (pipeline bug)");
        }
        // ((a - a^-1) z^-1)^ed = sum_i C(ed,i) (-1)^i a^(ed-2i) z^-ed
        Int binom = 1;
        for (int i = 0; i <= k.ed; ++i) {
            Int coeff = c * binom;
            if (i % 2 == 1) coeff = -coeff;
            out.add_term(BiKey{k.ea + k.ed - 2 * i, k.ez - k.ed}, coeff);
            binom = binom * (k.ed - i) / (i + 1);
        }
    }
    return out;
}

namespace {

struct DisplayTerm {
    int ea, ez, ed;
    const Int* coeff;
};

// Display order: alpha exponents by magnitude first (so a^2 and a^-2 sit
// together, matching the conventional way these polynomials are written),
// then z, then delta.
bool display_less(const DisplayTerm& x, const DisplayTerm& y) {
    int ax = x.ea < 0 ? -x.ea : x.ea;
    int ay = y.ea < 0 ? -y.ea : y.ea;
    if (ax != ay) return ax > ay;
    if (x.ea != y.ea) return x.ea > y.ea;
    if (x.ez != y.ez) return x.ez > y.ez;
    return x.ed > y.ed;
}

void append_var(std::string& s, const char* name, int e) {
    if (e == 0) return;
    if (!s.empty()) s += ' ';
    s += name;
    if (e != 1) {
        s += '^';
        s += std::to_string(e);
    }
}

std::string render_human(std::vector<DisplayTerm> terms) {
    if (terms.empty()) return "0";
    std::sort(terms.begin(), terms.end(), display_less);
    std::string out;
    bool first = true;
    for (const auto& t : terms) {
        Int mag = *t.coeff < 0 ? Int(-*t.coeff) : *t.coeff;
        if (first) {
            if (*t.coeff < 0) out += '-';
            first = false;
        } else {
            out += (*t.coeff < 0) ? " - " : " + ";
        }
        std::string vars;
        append_var(vars, "a", t.ea);
        append_var(vars, "z", t.ez);
        append_var(vars, "d", t.ed);
        if (vars.empty()) {
            out += mag.str();
        } else {
            if (mag != 1) {
                out += mag.str();
                out += ' ';
            }
            out += vars;
        }
    }
    return out;
}

}  // namespace

std::string render(const BiLaurent& p, RenderStyle style) {
    if (style == RenderStyle::Machine) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& [k, c] : p.terms())
            arr.push_back({k.ea, k.ez, c.str()});
        return arr.dump();
    }
    std::vector<DisplayTerm> terms;
    terms.reserve(p.terms().size());
    for (const auto& [k, c] : p.terms()) terms.push_back({k.ea, k.ez, 0, &c});
    return render_human(std::move(terms));
}

std::string render(const TriLaurent& p, RenderStyle style) {
    if (style == RenderStyle::Machine) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& [k, c] : p.terms())
            arr.push_back({k.ea, k.ez, k.ed, c.str()});
        return arr.dump();
    }
    std::vector<DisplayTerm> terms;
    terms.reserve(p.terms().size());
    for (const auto& [k, c] : p.terms())
        terms.push_back({k.ea, k.ez, k.ed, &c});
    return render_human(std::move(terms));
}

BiLaurent parse_bilaurent_machine(const std::string& text) {
    nlohmann::json arr;
    try {
        arr = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad polynomial JSON: ") + e.what());
    }
    if (!arr.is_array())
        throw ParseError("bad polynomial JSON: expected an array of terms");
    BiLaurent out;
    for (const auto& t : arr) {
        if (!t.is_array() || t.size() != 3 || !t[0].is_number_integer() ||
            !t[1].is_number_integer() || !t[2].is_string()) {
            throw ParseError(
                "bad polynomial term: expected [e_alpha, e_z, \"coeff\"]");
        }
        out.add_term(BiKey{t[0].get<int>(), t[1].get<int>()},
                     Int(t[2].get<std::string>()));
    }
    return out;
}

}  // namespace homfly
