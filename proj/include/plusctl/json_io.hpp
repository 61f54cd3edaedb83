#pragma once

// JSON file formats for the pipeline artifacts.  Matrix entries carry group
// elements as words in the presentation's generators rather than element ids,
// so a file read back against a realization with a different numbering still
// means the same module map.  Object keys serialize alphabetically and all
// emitters are deterministic, so equal values produce identical bytes.

#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "plusctl/chain.hpp"
#include "plusctl/errors.hpp"
#include "plusctl/extract.hpp"
#include "plusctl/groupring.hpp"
#include "plusctl/plus.hpp"
#include "plusctl/realize.hpp"
#include "plusctl/words.hpp"

namespace plusctl {

using Json = nlohmann::json;

namespace detail {

inline const Json& json_field(const Json& j, const char* key) {
  if (!j.is_object()) throw ValidationError("expected a JSON object");
  const auto it = j.find(key);
  if (it == j.end()) throw ValidationError(std::string("missing JSON field '") + key + "'");
  return *it;
}

inline std::int64_t json_int(const Json& j, const char* what) {
  if (!j.is_number_integer())
    throw ValidationError(std::string("expected an integer for ") + what);
  return j.get<std::int64_t>();
}

inline std::string json_string(const Json& j, const char* what) {
  if (!j.is_string()) throw ValidationError(std::string("expected a string for ") + what);
  return j.get<std::string>();
}

inline const Json& json_array(const Json& j, const char* what) {
  if (!j.is_array()) throw ValidationError(std::string("expected an array for ") + what);
  return j;
}

/// File coefficients are 64-bit; larger values would not round-trip.
inline std::int64_t checked_file_coeff(const Int& x) {
  static const Int lo = std::numeric_limits<std::int64_t>::min();
  static const Int hi = std::numeric_limits<std::int64_t>::max();
  if (x < lo || x > hi)
    throw ValidationError("coefficient exceeds the 64-bit range of the file format");
  return x.convert_to<std::int64_t>();
}

}  // namespace detail

inline Json realization_to_json(const FiniteRealization& r) {
  Json j;
  j["order"] = r.order();
  j["tables"] = r.tables();
  return j;
}

inline FiniteRealization realization_from_json(const Json& j) {
  const Json& jt = detail::json_array(detail::json_field(j, "tables"), "'tables'");
  std::vector<std::vector<int>> tables;
  for (const Json& row : jt) {
    std::vector<int> t;
    for (const Json& x : detail::json_array(row, "a multiplication table"))
      t.push_back(static_cast<int>(detail::json_int(x, "a table entry")));
    tables.push_back(std::move(t));
  }
  FiniteRealization r = FiniteRealization::from_tables(tables);
  if (detail::json_int(detail::json_field(j, "order"), "'order'") != r.order())
    throw ValidationError("realization order disagrees with its tables");
  return r;
}

inline Json presentation_to_json(const Presentation& p) {
  Json j;
  j["generators"] = p.generators;
  Json rels = Json::array();
  for (const Word& r : p.relators) rels.push_back(serialize_word(r, p.generators));
  j["relators"] = std::move(rels);
  return j;
}

inline Presentation presentation_from_json(const Json& j) {
  Presentation p;
  for (const Json& g : detail::json_array(detail::json_field(j, "generators"), "'generators'"))
    p.generators.push_back(detail::json_string(g, "a generator name"));
  const Json& rels = detail::json_array(detail::json_field(j, "relators"), "'relators'");
  Presentation alphabet = p;
  alphabet.validate();
  for (const Json& r : rels)
    p.relators.push_back(parse_word(detail::json_string(r, "a relator"), alphabet));
  p.validate();
  return p;
}

inline Json kernel_to_json(const KernelSpec& ks, const std::vector<std::string>& names) {
  Json j;
  Json words = Json::array();
  for (const Word& w : ks.kernel_words) words.push_back(serialize_word(w, names));
  j["words"] = std::move(words);
  Json decomp = Json::object();
  for (const auto& [idx, pairs] : ks.decompositions) {
    Json jp = Json::array();
    for (const auto& [a, b] : pairs)
      jp.push_back(Json::array({serialize_word(a, names), serialize_word(b, names)}));
    decomp[std::to_string(idx + 1)] = std::move(jp);
  }
  j["decompositions"] = std::move(decomp);
  return j;
}

inline KernelSpec kernel_from_json(const Json& j, const Presentation& alphabet) {
  KernelSpec ks;
  for (const Json& w : detail::json_array(detail::json_field(j, "words"), "'words'"))
    ks.kernel_words.push_back(parse_word(detail::json_string(w, "a kernel word"), alphabet));
  const Json& decomp = detail::json_field(j, "decompositions");
  if (!decomp.is_object()) throw ValidationError("expected an object for 'decompositions'");
  for (const auto& [key, jp] : decomp.items()) {
    std::size_t idx = 0;
    try {
      idx = std::stoul(key);
    } catch (const std::exception&) {
      throw ValidationError("decomposition key '" + key + "' is not an index");
    }
    if (idx < 1 || idx > ks.kernel_words.size())
      throw ValidationError("decomposition key '" + key + "' is out of range");
    std::vector<std::pair<Word, Word>> pairs;
    for (const Json& pr : detail::json_array(jp, "a decomposition list")) {
      const Json& pa = detail::json_array(pr, "a decomposition pair");
      if (pa.size() != 2) throw ValidationError("decomposition pairs need two words");
      pairs.emplace_back(parse_word(detail::json_string(pa[0], "a decomposition word"), alphabet),
                         parse_word(detail::json_string(pa[1], "a decomposition word"), alphabet));
    }
    ks.decompositions.emplace(idx - 1, std::move(pairs));
  }
  ks.validate(alphabet);
  return ks;
}

inline Json matrix_to_json(const RingMatrix& m, const std::vector<std::string>& names) {
  Json j;
  j["rows"] = m.rows;
  j["cols"] = m.cols;
  Json entries = Json::array();
  for (std::size_t r = 0; r < m.rows; ++r)
    for (std::size_t c = 0; c < m.cols; ++c) {
      const RingElement& e = m.at(r, c);
      if (e.is_zero()) continue;
      Json terms = Json::array();
      for (const auto& [element, coeff] : e.terms)
        terms.push_back(Json::array(
            {serialize_word(m.group().word_for_element(element), names),
             detail::checked_file_coeff(coeff)}));
      entries.push_back(Json::array({r, c, std::move(terms)}));
    }
  j["entries"] = std::move(entries);
  return j;
}

inline RingMatrix matrix_from_json(const Json& j, const Presentation& alphabet,
                                   RealizationPtr g) {
  const std::int64_t rows = detail::json_int(detail::json_field(j, "rows"), "'rows'");
  const std::int64_t cols = detail::json_int(detail::json_field(j, "cols"), "'cols'");
  if (rows < 0 || cols < 0) throw ValidationError("negative matrix dimension");
  RingMatrix m(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols), g);
  for (const Json& je : detail::json_array(detail::json_field(j, "entries"), "'entries'")) {
    const Json& e = detail::json_array(je, "a matrix entry");
    if (e.size() != 3) throw ValidationError("matrix entries are [row, col, terms] triples");
    const std::int64_t r = detail::json_int(e[0], "an entry row");
    const std::int64_t c = detail::json_int(e[1], "an entry column");
    if (r < 0 || r >= rows || c < 0 || c >= cols)
      throw ValidationError("matrix entry outside the stated dimensions");
    RingElement& cell = m.at(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
    for (const Json& jt : detail::json_array(e[2], "entry terms")) {
      const Json& t = detail::json_array(jt, "a term");
      if (t.size() != 2) throw ValidationError("terms are [word, coefficient] pairs");
      const Word w = parse_word(detail::json_string(t[0], "a term word"), alphabet);
      cell.add_term(g->image_of_word(w), Int(detail::json_int(t[1], "a coefficient")));
    }
  }
  return m;
}

inline Json complex_to_json(const AlgebraicComplex& c, const std::vector<std::string>& names) {
  Json j;
  j["ranks"] = c.ranks;
  Json bs = Json::array();
  for (const RingMatrix& b : c.boundaries) bs.push_back(matrix_to_json(b, names));
  j["boundaries"] = std::move(bs);
  return j;
}

inline AlgebraicComplex complex_from_json(const Json& j, const Presentation& alphabet,
                                          RealizationPtr g) {
  AlgebraicComplex c;
  c.realization = std::move(g);
  for (const Json& r : detail::json_array(detail::json_field(j, "ranks"), "'ranks'")) {
    const std::int64_t n = detail::json_int(r, "a rank");
    if (n < 0) throw ValidationError("negative rank");
    c.ranks.push_back(static_cast<std::size_t>(n));
  }
  for (const Json& b : detail::json_array(detail::json_field(j, "boundaries"), "'boundaries'"))
    c.boundaries.push_back(matrix_from_json(b, alphabet, c.realization));
  c.validate();
  return c;
}

inline Json plus_to_json(const PlusComplex& pc) {
  Json j;
  j["format"] = "plus-complex";
  j["presentation"] = presentation_to_json(pc.presentation);
  j["kernel"] = kernel_to_json(pc.kernel, pc.presentation.generators);
  j["realization"] = realization_to_json(*pc.realization);
  j["base"] = complex_to_json(pc.base, pc.presentation.generators);
  j["full"] = complex_to_json(pc.full, pc.presentation.generators);
  j["perfectness_verified"] = pc.perfectness_verified;
  return j;
}

inline PlusComplex plus_from_json(const Json& j) {
  if (detail::json_string(detail::json_field(j, "format"), "'format'") != "plus-complex")
    throw ValidationError("not a plus-complex document");
  PlusComplex pc;
  pc.presentation = presentation_from_json(detail::json_field(j, "presentation"));
  pc.kernel = kernel_from_json(detail::json_field(j, "kernel"), pc.presentation);
  pc.realization = share(realization_from_json(detail::json_field(j, "realization")));
  if (pc.realization->generator_count() != pc.presentation.generator_count())
    throw ValidationError("realization generator count disagrees with the presentation");
  if (!relators_act_trivially(pc.presentation, *pc.realization))
    throw ValidationError("a relator acts nontrivially on the stored realization");
  pc.base = complex_from_json(detail::json_field(j, "base"), pc.presentation, pc.realization);
  pc.full = complex_from_json(detail::json_field(j, "full"), pc.presentation, pc.realization);
  const Json& pv = detail::json_field(j, "perfectness_verified");
  if (!pv.is_boolean()) throw ValidationError("expected a boolean for 'perfectness_verified'");
  pc.perfectness_verified = pv.get<bool>();
  if (pc.full.ranks.size() != 4 || pc.base.ranks.size() != 3 ||
      pc.full.ranks[0] != pc.base.ranks[0] || pc.full.ranks[1] != pc.base.ranks[1] ||
      pc.full.ranks[2] != pc.base.ranks[2] + pc.added_cells() ||
      pc.full.ranks[3] != pc.added_cells())
    throw ValidationError("stored ranks disagree with the added-cell count");
  return pc;
}

inline Json cell_three_to_json(const CellThreeComplex& x) {
  Json j;
  j["format"] = "cell-three-complex";
  j["presentation"] = presentation_to_json(x.presentation);
  j["realization"] = realization_to_json(*x.quotient);
  j["d3"] = matrix_to_json(x.d3, x.presentation.generators);
  return j;
}

inline CellThreeComplex cell_three_from_json(const Json& j,
                                             std::size_t max_cosets = kDefaultMaxCosets) {
  if (detail::json_string(detail::json_field(j, "format"), "'format'") != "cell-three-complex")
    throw ValidationError("not a cell-three-complex document");
  CellThreeComplex x;
  x.presentation = presentation_from_json(detail::json_field(j, "presentation"));
  if (j.contains("realization")) {
    x.quotient = share(realization_from_json(j["realization"]));
  } else if (j.contains("quotient_presentation")) {
    x.quotient = share(todd_coxeter(presentation_from_json(j["quotient_presentation"]),
                                    max_cosets));
  } else {
    throw ValidationError("missing JSON field 'realization' (or 'quotient_presentation')");
  }
  if (x.quotient->generator_count() != x.presentation.generator_count())
    throw ValidationError("realization generator count disagrees with the presentation");
  x.d3 = matrix_from_json(detail::json_field(j, "d3"), x.presentation, x.quotient);
  return x;
}

/// Parse JSON text, reporting syntax errors with their byte offset.
inline Json json_parse(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), e.byte);
  }
}

/// Fixed rendering for files: two-space indent, sorted keys, trailing newline.
inline std::string json_render(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace plusctl
