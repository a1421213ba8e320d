#pragma once

// JSON documents: parsing into kernel objects and emitting them back.

#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"

#include "dglinf/artin.hpp"
#include "dglinf/dgla.hpp"
#include "dglinf/hitchin.hpp"
#include "dglinf/linfty.hpp"

namespace dglinf::io {

using json = nlohmann::ordered_json;

struct HitchinDocument {
  HitchinPair pair;
  std::optional<CdgaData> base;
  bool operator==(const HitchinDocument&) const = default;
};

/// MC element with names unresolved; basis names are looked up against the
/// dgla it is used with.
struct McElementDocument {
  ArtinAlgebra artin;
  std::map<std::pair<Monomial, std::string>, Rational> terms;

  MVector resolve(const GradedSpace& V) const {
    MVector x;
    for (const auto& [key, c] : terms) add_scaled(x, key.first, basis_vector(V.index(key.second)), c);
    return x;
  }
  bool operator==(const McElementDocument&) const = default;
};

struct MorphismDocument {
  LInftyStructure source;
  LInftyStructure target;
  std::map<SymWord, Vector> table;

  LInftyMorphism morphism() const {
    std::vector<MultilinearEntry> entries;
    for (const auto& [w, v] : table) entries.push_back({w.factors, v});
    return LInftyMorphism::from_entries(source, target, entries);
  }
  bool operator==(const MorphismDocument&) const = default;
};

using Document =
    std::variant<CdgaData, DglaData, LInftyStructure, HitchinDocument, ArtinAlgebra, McElementDocument, MorphismDocument>;

inline const char* kind_name(const Document& d) {
  static const char* kNames[] = {"cdga", "dgla", "linfty", "hitchin-pair", "artin", "mc-element", "linfty-morphism"};
  return kNames[d.index()];
}

namespace detail {

inline const json& field(const json& j, const char* key, const std::string& ctx) {
  if (!j.is_object()) throw ParseError(ctx + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(ctx + ": missing field \"" + key + "\"");
  return *it;
}

inline const json& array_field(const json& j, const char* key, const std::string& ctx) {
  const json& a = field(j, key, ctx);
  if (!a.is_array()) throw ParseError(ctx + ": field \"" + key + "\" must be an array");
  return a;
}

inline std::string string_of(const json& j, const std::string& ctx) {
  if (!j.is_string()) throw ParseError(ctx + ": expected a string");
  return j.get<std::string>();
}

inline Rational rational_of(const json& j, const std::string& ctx) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.dump());
  throw ParseError(ctx + ": rationals must be strings \"p/q\" or integers");
}

inline int int_of(const json& j, const std::string& ctx) {
  if (!j.is_number_integer()) throw ParseError(ctx + ": expected an integer");
  return j.get<int>();
}

inline GradedSpace parse_space(const json& arr, const std::string& ctx) {
  if (!arr.is_array()) throw ParseError(ctx + ": basis must be an array");
  std::vector<GradedSpace::BasisElement> basis;
  for (const auto& e : arr) {
    basis.push_back({string_of(field(e, "name", ctx), ctx + " name"), int_of(field(e, "degree", ctx), ctx + " degree")});
  }
  return GradedSpace(std::move(basis));
}

inline std::size_t lookup(const GradedSpace& V, const json& j, const std::string& ctx) {
  const std::string name = string_of(j, ctx);
  auto i = V.find(name);
  if (!i) throw ParseError(ctx + ": unknown basis element \"" + name + "\"");
  return *i;
}

inline GradedMap parse_differential(const json& doc, const GradedSpace& V) {
  std::vector<Vector> cols(V.dim());
  if (doc.contains("differential")) {
    for (const auto& e : array_field(doc, "differential", "differential")) {
      const std::size_t from = lookup(V, field(e, "from", "differential"), "differential.from");
      const std::size_t to = lookup(V, field(e, "to", "differential"), "differential.to");
      add_term(cols[from], to, rational_of(field(e, "coeff", "differential"), "differential.coeff"));
    }
  }
  return GradedMap(V, V, 1, std::move(cols));
}

/// Reads a bilinear table; an absent reverse entry (b,a) is filled in as
/// `sign(a,b)` times the (a,b) entry.
template <class Sign>
StructureConstants parse_table(const json& doc, const char* key, const GradedSpace& V, Sign&& sign) {
  std::map<std::pair<std::size_t, std::size_t>, Vector> given;
  if (doc.contains(key)) {
    for (const auto& e : array_field(doc, key, key)) {
      const std::size_t a = lookup(V, field(e, "a", key), std::string(key) + ".a");
      const std::size_t b = lookup(V, field(e, "b", key), std::string(key) + ".b");
      const std::size_t out = lookup(V, field(e, "out", key), std::string(key) + ".out");
      add_term(given[{a, b}], out, rational_of(field(e, "coeff", key), std::string(key) + ".coeff"));
    }
  }
  StructureConstants t(V.dim());
  for (const auto& [ab, v] : given) {
    t.set(ab.first, ab.second, v);
    if (!given.count({ab.second, ab.first})) t.set(ab.second, ab.first, scaled(v, sign(ab.first, ab.second)));
  }
  return t;
}

inline json vector_json(const GradedSpace& V, const Vector& v) {
  json out = json::object();
  for (const auto& [i, c] : v) out[V.name(i)] = to_string(c);
  return out;
}

template <class Sign>
json table_json(const StructureConstants& t, const GradedSpace& V, Sign&& sign) {
  json out = json::array();
  const std::size_t n = V.dim();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const Vector& v = t.at(a, b);
      if (v.empty()) continue;
      // Entries recoverable from the reverse one by symmetry are omitted.
      if (a > b && !t.at(b, a).empty() && scaled(t.at(b, a), sign(b, a)) == v) continue;
      for (const auto& [o, c] : v) out.push_back({{"a", V.name(a)}, {"b", V.name(b)}, {"out", V.name(o)}, {"coeff", to_string(c)}});
    }
  return out;
}

inline json space_json(const GradedSpace& V) {
  json out = json::array();
  for (const auto& b : V.basis()) out.push_back({{"name", b.name}, {"degree", b.degree}});
  return out;
}

inline json differential_json(const GradedMap& d, const GradedSpace& V) {
  json out = json::array();
  for (std::size_t i = 0; i < V.dim(); ++i)
    for (const auto& [j, c] : d.column(i)) out.push_back({{"from", V.name(i)}, {"to", V.name(j)}, {"coeff", to_string(c)}});
  return out;
}

inline auto skew_sign(const GradedSpace& V) {
  return [&V](std::size_t a, std::size_t b) { return -sign_pow(1LL * V.degree(a) * V.degree(b)); };
}

inline auto commutative_sign(const GradedSpace& V) {
  return [&V](std::size_t a, std::size_t b) { return sign_pow(1LL * V.degree(a) * V.degree(b)); };
}

inline CdgaData parse_cdga(const json& j) {
  GradedSpace V = parse_space(field(j, "basis", "cdga"), "cdga.basis");
  GradedMap d = parse_differential(j, V);
  StructureConstants p = parse_table(j, "product", V, commutative_sign(V));
  return CdgaData{std::move(V), std::move(d), std::move(p)};
}

inline DglaData parse_dgla(const json& j) {
  GradedSpace V = parse_space(field(j, "basis", "dgla"), "dgla.basis");
  GradedMap d = parse_differential(j, V);
  StructureConstants b = parse_table(j, "bracket", V, skew_sign(V));
  return DglaData{std::move(V), std::move(d), std::move(b)};
}

/// Entries {"inputs": [names], "out": name, "coeff"} grouped by inputs.
inline std::vector<MultilinearEntry> parse_multilinear(const json& arr, const GradedSpace& src, const GradedSpace& tgt,
                                                       const std::string& ctx) {
  std::map<std::vector<std::size_t>, Vector> grouped;
  std::vector<std::vector<std::size_t>> order;
  for (const auto& e : arr) {
    std::vector<std::size_t> inputs;
    for (const auto& n : array_field(e, "inputs", ctx)) inputs.push_back(lookup(src, n, ctx + ".inputs"));
    if (inputs.empty()) throw ParseError(ctx + ": entry with no inputs");
    const std::size_t out = lookup(tgt, field(e, "out", ctx), ctx + ".out");
    if (!grouped.count(inputs)) order.push_back(inputs);
    add_term(grouped[inputs], out, rational_of(field(e, "coeff", ctx), ctx + ".coeff"));
  }
  std::vector<MultilinearEntry> out;
  for (const auto& in : order) out.push_back({in, grouped[in]});
  return out;
}

inline LInftyStructure parse_linfty(const json& j) {
  GradedSpace V = parse_space(field(j, "basis", "linfty"), "linfty.basis");
  std::vector<MultilinearEntry> entries;
  if (j.contains("brackets")) entries = parse_multilinear(array_field(j, "brackets", "linfty"), V, V, "linfty.brackets");
  return LInftyStructure::from_entries(std::move(V), entries);
}

inline json multilinear_json(const std::map<SymWord, Vector>& table, const GradedSpace& src, const GradedSpace& tgt) {
  json out = json::array();
  for (const auto& [w, v] : table) {
    json inputs = json::array();
    for (auto i : w.factors) inputs.push_back(src.name(i));
    for (const auto& [o, c] : v) out.push_back({{"inputs", inputs}, {"out", tgt.name(o)}, {"coeff", to_string(c)}});
  }
  return out;
}

inline std::map<SymWord, Vector> flat_table(const LInftyStructure& S) {
  std::map<SymWord, Vector> out;
  for (const auto& t : S.tables()) out.insert(t.begin(), t.end());
  return out;
}

inline ArtinAlgebra parse_artin(const json& j) {
  std::vector<std::string> vars;
  for (const auto& v : array_field(j, "variables", "artin")) vars.push_back(string_of(v, "artin.variables"));
  if (j.contains("degree_bound")) return ArtinAlgebra::truncated(std::move(vars), int_of(j["degree_bound"], "artin.degree_bound"));
  std::set<Monomial> mons;
  for (const auto& m : array_field(j, "monomials", "artin")) {
    Monomial e;
    if (!m.is_array()) throw ParseError("artin.monomials: each monomial is an exponent array");
    for (const auto& x : m) e.push_back(int_of(x, "artin.monomials"));
    mons.insert(e);
  }
  return ArtinAlgebra::from_monomials(std::move(vars), std::move(mons));
}

inline json artin_json(const ArtinAlgebra& A) {
  json mons = json::array();
  for (const auto& m : A.monomials()) mons.push_back(m);
  return json{{"variables", A.variables()}, {"monomials", mons}};
}

inline HitchinDocument parse_hitchin(const json& j) {
  const int r = int_of(field(j, "rank", "hitchin-pair"), "hitchin-pair.rank");
  if (r <= 0) throw InvalidInput("hitchin pair: rank must be positive");
  GradedSpace L = parse_space(field(j, "L", "hitchin-pair"), "hitchin-pair.L");
  const json& th = array_field(j, "theta", "hitchin-pair");
  std::vector<std::vector<std::vector<Rational>>> entries;
  for (const auto& row : th) {
    if (!row.is_array()) throw ParseError("hitchin-pair.theta: rows must be arrays");
    auto& out_row = entries.emplace_back();
    for (const auto& cell : row) {
      if (!cell.is_array()) throw ParseError("hitchin-pair.theta: entries must be coefficient arrays");
      auto& out_cell = out_row.emplace_back();
      for (const auto& c : cell) out_cell.push_back(rational_of(c, "hitchin-pair.theta"));
    }
  }
  HitchinDocument doc{make_hitchin_pair(static_cast<std::size_t>(r), std::move(L), entries), std::nullopt};
  if (j.contains("base")) doc.base = parse_cdga(j["base"]);
  return doc;
}

inline McElementDocument parse_mc(const json& j) {
  McElementDocument doc{parse_artin(field(j, "artin", "mc-element")), {}};
  for (const auto& t : array_field(j, "terms", "mc-element")) {
    Monomial m;
    for (const auto& x : array_field(t, "monomial", "mc-element.terms")) m.push_back(int_of(x, "mc-element.terms.monomial"));
    if (m.size() != doc.artin.num_variables()) throw ParseError("mc-element: monomial arity does not match the variables");
    const std::string name = string_of(field(t, "element", "mc-element.terms"), "mc-element.terms.element");
    const Rational c = rational_of(field(t, "coeff", "mc-element.terms"), "mc-element.terms.coeff");
    add_term<std::pair<Monomial, std::string>>(doc.terms, {m, name}, c);
  }
  return doc;
}

inline MorphismDocument parse_morphism(const json& j) {
  LInftyStructure src = parse_linfty(field(j, "source", "linfty-morphism"));
  LInftyStructure tgt = parse_linfty(field(j, "target", "linfty-morphism"));
  MorphismDocument doc{src, tgt, {}};
  if (j.contains("components")) {
    auto entries = parse_multilinear(array_field(j, "components", "linfty-morphism"), src.space(), tgt.space(),
                                     "linfty-morphism.components");
    for (const auto& e : entries) {
      auto [s, word] = src.basis().normalize(e.inputs);
      if (s == 0) {
        if (!e.value.empty()) throw InvalidInput("non-symmetric morphism component on " + src.basis().word_name(SymWord{e.inputs}));
        continue;
      }
      Vector v = scaled(e.value, s);
      auto [it, inserted] = doc.table.try_emplace(word, v);
      if (!inserted && it->second != v) throw InvalidInput("non-symmetric morphism component on " + src.basis().word_name(word));
    }
    std::erase_if(doc.table, [](const auto& kv) { return kv.second.empty(); });
  }
  doc.morphism();  // validates degrees
  return doc;
}

inline std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

}  // namespace detail

inline Document parse_document(const json& j) {
  const std::string kind = detail::string_of(detail::field(j, "kind", "document"), "kind");
  if (kind == "cdga") return detail::parse_cdga(j);
  if (kind == "dgla") return detail::parse_dgla(j);
  if (kind == "linfty") return detail::parse_linfty(j);
  if (kind == "hitchin-pair") return detail::parse_hitchin(j);
  if (kind == "artin") return detail::parse_artin(j);
  if (kind == "mc-element") return detail::parse_mc(j);
  if (kind == "linfty-morphism") return detail::parse_morphism(j);
  throw ParseError("unknown document kind \"" + kind + "\"");
}

/// Parses JSON text; syntax errors report line and column.
inline Document parse_text(const std::string& text, const std::string& origin = "<input>") {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    auto [line, col] = detail::line_column(text, e.byte);
    throw ParseError(origin + ":" + std::to_string(line) + ":" + std::to_string(col) + ": malformed JSON");
  }
  try {
    return parse_document(j);
  } catch (const ParseError& e) {
    throw ParseError(origin + ": " + e.what());
  }
}

inline Document parse_spec(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path + ": cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_text(ss.str(), path);
}

inline json cdga_json(const CdgaData& A) {
  return json{{"kind", "cdga"},
              {"basis", detail::space_json(A.space)},
              {"differential", detail::differential_json(A.d, A.space)},
              {"product", detail::table_json(A.product, A.space, detail::commutative_sign(A.space))}};
}

inline json dgla_json(const DglaData& L) {
  return json{{"kind", "dgla"},
              {"basis", detail::space_json(L.space)},
              {"differential", detail::differential_json(L.d, L.space)},
              {"bracket", detail::table_json(L.bracket, L.space, detail::skew_sign(L.space))}};
}

inline json linfty_json(const LInftyStructure& S) {
  return json{{"kind", "linfty"},
              {"basis", detail::space_json(S.space())},
              {"brackets", detail::multilinear_json(detail::flat_table(S), S.space(), S.space())}};
}

inline json emit(const Document& doc) {
  return std::visit(
      [](const auto& d) -> json {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, CdgaData>) {
          return cdga_json(d);
        } else if constexpr (std::is_same_v<T, DglaData>) {
          return dgla_json(d);
        } else if constexpr (std::is_same_v<T, LInftyStructure>) {
          return linfty_json(d);
        } else if constexpr (std::is_same_v<T, HitchinDocument>) {
          const auto& P = d.pair;
          json theta = json::array();
          for (std::size_t i = 0; i < P.rank(); ++i) {
            json row = json::array();
            for (std::size_t j = 0; j < P.rank(); ++j) {
              json cell = json::array();
              for (std::size_t l = 0; l < P.dim_l(); ++l) cell.push_back(to_string(P.theta(l)(i, j)));
              row.push_back(cell);
            }
            theta.push_back(row);
          }
          json out{{"kind", "hitchin-pair"}, {"rank", P.rank()}, {"L", detail::space_json(P.line())}, {"theta", theta}};
          if (d.base) out["base"] = cdga_json(*d.base);
          return out;
        } else if constexpr (std::is_same_v<T, ArtinAlgebra>) {
          json out{{"kind", "artin"}};
          out.update(detail::artin_json(d));
          return out;
        } else if constexpr (std::is_same_v<T, McElementDocument>) {
          json terms = json::array();
          for (const auto& [key, c] : d.terms) terms.push_back({{"monomial", key.first}, {"element", key.second}, {"coeff", to_string(c)}});
          return json{{"kind", "mc-element"}, {"artin", detail::artin_json(d.artin)}, {"terms", terms}};
        } else {
          json src = linfty_json(d.source), tgt = linfty_json(d.target);
          src.erase("kind");
          tgt.erase("kind");
          return json{{"kind", "linfty-morphism"},
                      {"source", src},
                      {"target", tgt},
                      {"components", detail::multilinear_json(d.table, d.source.space(), d.target.space())}};
        }
      },
      doc);
}

/// Pretty-printed text with a trailing newline.
inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace dglinf::io
