#pragma once

/**
 * @file io.hpp
 * @brief JSON forms of fields, polynomials, ring contexts, matrices and
 * witness pairs.
 *
 *   field:      {"kind":"Fp","p":5} or {"kind":"Q"}
 *   polynomial: {"nvars":m,"terms":[{"coeff":"5/6","exps":[1,0,2]},...]}
 *               terms leading-first in graded-lex order
 *   ctx:        {"field":field,"nvars":m} plus "truncation":N when truncated
 *   matrix:     {"n":n,"ctx":ctx,"entries":[[poly,...],...]} row-major
 *
 * Parsers throw MalformedInput on anything they do not recognize.
 */

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "trcomm/error.hpp"
#include "trcomm/field.hpp"
#include "trcomm/matrix.hpp"
#include "trcomm/packing.hpp"
#include "trcomm/polynomial.hpp"
#include "trcomm/ring.hpp"
#include "trcomm/witness.hpp"

namespace trcomm::io {

using Json = nlohmann::ordered_json;

namespace detail {

template <typename T>
T get_field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(ErrorCode::MalformedInput, std::string("missing key '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::MalformedInput, std::string("bad value for '") + key + "': " + e.what());
  }
}

}  // namespace detail

inline Json to_json(const FieldSpec& f) {
  if (f.is_rationals()) return Json{{"kind", "Q"}};
  return Json{{"kind", "Fp"}, {"p", f.modulus()}};
}

inline FieldSpec field_from_json(const Json& j) {
  auto kind = detail::get_field<std::string>(j, "kind");
  if (kind == "Q") return FieldSpec::rationals();
  if (kind == "Fp") {
    auto p = detail::get_field<std::uint64_t>(j, "p");
    try {
      return FieldSpec::prime(p);
    } catch (const Error& e) {
      throw Error(ErrorCode::MalformedInput, e.what());
    }
  }
  throw Error(ErrorCode::MalformedInput, "unknown field kind '" + kind + "'");
}

inline Json to_json(const Polynomial& p) {
  Json terms = Json::array();
  for (const auto& t : p.terms()) {
    Json exps = Json::array();
    for (auto e : t.monomial.exps()) exps.push_back(e);
    terms.push_back(Json{{"coeff", t.coeff.to_string()}, {"exps", exps}});
  }
  return Json{{"nvars", p.nvars()}, {"terms", terms}};
}

inline Polynomial polynomial_from_json(const Json& j, const FieldSpec& field) {
  auto nvars = detail::get_field<std::size_t>(j, "nvars");
  auto terms_json = detail::get_field<Json>(j, "terms");
  if (!terms_json.is_array()) throw Error(ErrorCode::MalformedInput, "'terms' must be an array");
  std::vector<Term> terms;
  for (const auto& t : terms_json) {
    auto exps = detail::get_field<std::vector<std::uint32_t>>(t, "exps");
    if (exps.size() != nvars) throw Error(ErrorCode::MalformedInput, "exponent vector length != nvars");
    const Json& c = t.contains("coeff") ? t.at("coeff") : Json();
    FieldElem coeff;
    try {
      if (c.is_string()) {
        coeff = FieldElem::parse(field, c.get<std::string>());
      } else if (c.is_number_integer()) {
        coeff = FieldElem(field, c.get<long>());
      } else {
        throw Error(ErrorCode::MalformedInput, "coefficient must be a string or integer");
      }
    } catch (const Error& e) {
      if (e.code() == ErrorCode::MalformedInput) throw;
      throw Error(ErrorCode::MalformedInput, e.what());
    }
    terms.push_back({Monomial(std::move(exps)), coeff});
  }
  return Polynomial::from_terms(field, nvars, std::move(terms));
}

inline Json to_json(const RingCtx& ctx) {
  Json j{{"field", to_json(ctx.field())}, {"nvars", ctx.nvars()}};
  if (ctx.truncation()) j["truncation"] = *ctx.truncation();
  return j;
}

inline RingCtx ctx_from_json(const Json& j) {
  FieldSpec field = field_from_json(detail::get_field<Json>(j, "field"));
  auto nvars = detail::get_field<std::size_t>(j, "nvars");
  std::optional<std::uint32_t> trunc;
  if (j.contains("truncation")) {
    trunc = detail::get_field<std::uint32_t>(j, "truncation");
    if (*trunc < 1) throw Error(ErrorCode::MalformedInput, "truncation must be >= 1");
  }
  return RingCtx(field, nvars, trunc);
}

inline Json to_json(const Matrix& a) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < a.size(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < a.size(); ++j) row.push_back(to_json(a(i, j)));
    rows.push_back(row);
  }
  return Json{{"n", a.size()}, {"ctx", to_json(a.ctx())}, {"entries", rows}};
}

/// Entries may be polynomial objects, text strings ("x1^2 - 1") or integers.
inline Matrix matrix_from_json(const Json& j) {
  RingCtx ctx = ctx_from_json(detail::get_field<Json>(j, "ctx"));
  auto n = detail::get_field<std::size_t>(j, "n");
  auto rows = detail::get_field<Json>(j, "entries");
  if (!rows.is_array() || rows.size() != n) throw Error(ErrorCode::MalformedInput, "'entries' must have n rows");
  Matrix m(ctx, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!rows[i].is_array() || rows[i].size() != n) throw Error(ErrorCode::MalformedInput, "row length != n");
    for (std::size_t k = 0; k < n; ++k) {
      const Json& e = rows[i][k];
      Polynomial p;
      try {
        if (e.is_object()) {
          p = polynomial_from_json(e, ctx.field());
        } else if (e.is_string()) {
          p = Polynomial::parse(ctx.field(), ctx.nvars(), e.get<std::string>());
        } else if (e.is_number_integer()) {
          p = ctx.from_int(e.get<long>());
        } else {
          throw Error(ErrorCode::MalformedInput, "unsupported matrix entry");
        }
        m.set(i, k, p);
      } catch (const Error& err) {
        if (err.code() == ErrorCode::MalformedInput) throw;
        throw Error(ErrorCode::MalformedInput, "entry (" + std::to_string(i + 1) + "," + std::to_string(k + 1) + "): " + err.what());
      }
    }
  }
  return m;
}

inline Json to_json(const WitnessPair& w) {
  return Json{{"target", to_json(w.target())}, {"X", to_json(w.x())}, {"B", to_json(w.b())}};
}

/// Re-verifies the commutator; throws WitnessVerificationFailed.
inline WitnessPair witness_from_json(const Json& j) {
  return WitnessPair::verified(matrix_from_json(detail::get_field<Json>(j, "X")),
                               matrix_from_json(detail::get_field<Json>(j, "B")),
                               matrix_from_json(detail::get_field<Json>(j, "target")));
}

inline Json to_json(const LatticePoint& p) { return Json(p.coords); }

inline std::vector<LatticePoint> points_from_json(const Json& j) {
  if (!j.is_array()) throw Error(ErrorCode::MalformedInput, "point list must be an array");
  std::vector<LatticePoint> out;
  for (const auto& p : j) {
    try {
      out.emplace_back(p.get<std::vector<std::uint32_t>>());
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::MalformedInput, std::string("bad lattice point: ") + e.what());
    }
  }
  return out;
}

inline Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::MalformedInput, e.what());
  }
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::MalformedInput, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Writes via a sibling temporary and rename, so readers never see a partial file.
inline void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::MalformedInput, "cannot write " + tmp.string());
    out << content;
    if (!out) throw Error(ErrorCode::MalformedInput, "short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace trcomm::io
