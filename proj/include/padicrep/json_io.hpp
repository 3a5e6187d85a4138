#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "padicrep/bt_tree.hpp"
#include "padicrep/evalue.hpp"
#include "padicrep/fp.hpp"
#include "padicrep/lattice_lab.hpp"
#include "padicrep/llc.hpp"
#include "padicrep/padic_scalar.hpp"
#include "padicrep/rational.hpp"
#include "padicrep/valuation.hpp"

namespace padicrep {

// Insertion-ordered documents keep output bytes stable across runs.
using Json = nlohmann::ordered_json;

// Scalar view {valuation, unit, precision}.  valuation is the valuation of
// the stored representative in half units ("3", "-1/2", "inf"); unit is the
// unit part of the representative reduced mod p^N (the sqrt(p) factor, when
// present, lives in the half-integer valuation); precision bounds the
// distance to the intended value and is "inf" for exactly known scalars.
inline Json scalar_to_json(const PadicScalar& s, long long N) {
    if (N < 1) throw UsageError("scalar_to_json: precision below 1");
    Json out;
    Val v = s.rep_valuation();
    out["valuation"] = v.str();
    if (s.representative() == 0) {
        out["unit"] = "0";
    } else {
        long long w = vp_rat(s.representative(), s.prime().big());
        Rat u = s.representative() / rat_ppow(s.prime().big(), w);
        out["unit"] = rat_mod(u, ipow(s.prime().big(), N)).str();
    }
    out["precision"] = s.abs_precision().str();
    return out;
}

inline Json scalar_series_to_json(const std::vector<PadicScalar>& series, long long N) {
    Json out = Json::array();
    for (const auto& s : series) out.push_back(scalar_to_json(s, N));
    return out;
}

// Values c0 + c1 ell as {"constant": scalar, "ell": scalar}.
inline Json evalue_to_json(const EValue& v, long long N) {
    Json out;
    out["constant"] = scalar_to_json(v.constant_part(), N);
    out["ell"] = scalar_to_json(v.ell_part(), N);
    return out;
}

inline Json fp2_to_json(const Fp2& a) {
    return Json::array(
        {a.re().convert_to<long long>(), a.im().convert_to<long long>()});
}

// Vertex {n, mu_digits: [[e, d], ...]} with digits sorted by exponent.
inline Json vertex_to_json(const VertexClass& v) {
    Json out;
    out["n"] = v.n;
    Json digits = Json::array();
    for (const auto& [e, d] : v.digits) digits.push_back(Json::array({e, d}));
    out["mu_digits"] = digits;
    return out;
}

inline Json edge_to_json(const OrientedEdge& e) {
    Json out;
    out["src"] = vertex_to_json(e.src);
    out["dst"] = vertex_to_json(e.dst);
    return out;
}

// Edge functions as arrays of {edge, value}; map order makes this canonical.
inline Json edge_function_to_json(const EdgeFunction& f) {
    Json out = Json::array();
    for (const auto& [edge, value] : f.terms()) {
        Json rec;
        rec["edge"] = edge_to_json(edge);
        rec["value"] = value.value().convert_to<long long>();
        out.push_back(rec);
    }
    return out;
}

inline Json galois_descriptor_to_json(const GaloisDescriptor& d) {
    Json out;
    if (d.irreducible) {
        out["type"] = "irreducible";
        out["omega2_exp"] = d.omega2_exp;
        out["twist"] = 0;
    } else {
        out["type"] = "reducible";
        Json summands = Json::array();
        for (const auto& s : d.summands) {
            Json rec;
            rec["omega_exp"] = s.omega_exp;
            rec["mu"] = fp2_to_json(s.mu);
            summands.push_back(rec);
        }
        out["summands"] = summands;
    }
    return out;
}

inline Json g1_report_to_json(const G1Report& rep) {
    Json out;
    out["r"] = rep.r;
    out["n"] = rep.n;
    out["x"] = rep.x.str();
    out["all_pass"] = rep.all_pass;
    Json entries = Json::array();
    for (const auto& e : rep.entries) {
        Json rec;
        rec["a"] = e.a;
        rec["j"] = e.j;
        rec["pass"] = e.pass;
        rec["margin_valuation"] = e.margin.str();
        entries.push_back(rec);
    }
    out["entries"] = entries;
    return out;
}

// Rational literal "a/b" with optional sign, or a bare integer.
inline Rat parse_rational(const std::string& text) {
    if (text.empty()) throw UsageError("parse_rational: empty literal");
    auto slash = text.find('/');
    Int n, d;
    try {
        if (slash == std::string::npos) {
            n = Int(text);
            d = 1;
        } else {
            n = Int(text.substr(0, slash));
            d = Int(text.substr(slash + 1));
        }
    } catch (const std::exception&) {
        throw UsageError("parse_rational: malformed literal '" + text + "'");
    }
    if (d == 0) throw UsageError("parse_rational: zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    return Rat(n) / Rat(d);
}

// Half-integer-or-inf literal: "inf", or a rational with denominator 1 or 2.
inline Val parse_val_literal(const std::string& text) {
    if (text == "inf" || text == "+inf") return Val::infinity();
    Rat x = parse_rational(text);
    if (den(x) != 1 && den(x) != 2)
        throw UsageError("parse_val_literal: denominator must be 1 or 2");
    return Val::from_rat(x);
}

}  // namespace padicrep
