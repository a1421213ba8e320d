#pragma once

// Command dispatch for the dglinf tool. Each command takes parsed documents
// and returns a deterministic JSON report plus an exit status.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "dglinf/hitchin.hpp"
#include "dglinf/io.hpp"
#include "dglinf/mc.hpp"

namespace dglinf::cli {

using io::json;

enum ExitCode { kPass = 0, kCheckFailed = 1, kUsage = 2 };

class UsageError : public Error {
 public:
  using Error::Error;
};

struct Options {
  int weight = 4;
  std::optional<int> order;
  std::optional<std::uint64_t> seed;
};

struct Report {
  json body;
  int exit_code = kPass;
};

struct NamedDocument {
  std::string origin;
  io::Document doc;
};

inline const std::vector<std::string>& commands() {
  static const std::vector<std::string> kCommands{
      "check-dgla", "check-linfty", "check-morphism", "cohomology",  "mc-solve",    "gauge-equiv",
      "hitchin-build", "hitchin-verify", "pushforward", "hitchin-map", "obstruction", "emit"};
  return kCommands;
}

namespace detail {

template <class T>
std::vector<const T*> all_of_kind(const std::vector<NamedDocument>& docs) {
  std::vector<const T*> out;
  for (const auto& d : docs)
    if (const T* p = std::get_if<T>(&d.doc)) out.push_back(p);
  return out;
}

template <class T>
const T* optional_one(const std::vector<NamedDocument>& docs, const char* what) {
  auto v = all_of_kind<T>(docs);
  if (v.size() > 1) throw UsageError(std::string("expected at most one ") + what + " document");
  return v.empty() ? nullptr : v.front();
}

template <class T>
const T& exactly_one(const std::vector<NamedDocument>& docs, const char* what) {
  const T* p = optional_one<T>(docs, what);
  if (!p) throw UsageError(std::string("expected a ") + what + " document");
  return *p;
}

inline json vec(const GradedSpace& V, const Vector& v) { return io::detail::vector_json(V, v); }

inline std::string monomial_name(const ArtinAlgebra& A, const Monomial& m) {
  std::string s;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!s.empty()) s += "·";
    s += A.variables()[i];
    if (m[i] > 1) s += "^" + std::to_string(m[i]);
  }
  return s.empty() ? "1" : s;
}

inline json mvec(const GradedSpace& V, const ArtinAlgebra& A, const MVector& x) {
  json out = json::object();
  for (const auto& [m, v] : x) out[monomial_name(A, m)] = vec(V, v);
  return out;
}

inline json coords(const std::vector<Rational>& c) {
  json out = json::array();
  for (const auto& q : c) out.push_back(to_string(q));
  return out;
}

inline json check_json(const CheckResult& r, const GradedSpace& V) {
  json out{{"ok", r.ok}};
  if (!r.ok) {
    out["axiom"] = r.axiom;
    out["witness"] = r.witness;
    out["discrepancy"] = vec(V, r.discrepancy);
  }
  return out;
}

inline json cohomology_json(const CohomologySummary& H) {
  json out = json::array();
  for (int deg : H.degrees()) {
    auto c = H.at(deg);
    json reps = json::array();
    for (const auto& r : c.representatives) reps.push_back(vec(H.space(), r));
    out.push_back({{"degree", deg},
                   {"chain_dim", c.chain_dim},
                   {"cocycle_dim", c.cocycle_dim},
                   {"coboundary_dim", c.coboundary_dim},
                   {"dimension", c.dimension},
                   {"representatives", reps}});
  }
  return out;
}

inline json word_check_json(const WordCheck& r, const GradedSpace& target) {
  json out{{"ok", r.ok}};
  if (!r.ok) {
    out["word"] = r.word_name;
    out["discrepancy"] = vec(target, r.discrepancy);
  }
  return out;
}

/// Runs check_codifferential at weights 1..max, stopping at the first failure.
inline json codifferential_json(const LInftyStructure& S, int max_weight, bool& ok) {
  json out = json::array();
  ok = true;
  for (int w = 1; w <= max_weight && ok; ++w) {
    auto r = check_codifferential(S, static_cast<std::size_t>(w));
    json e = word_check_json(r, S.space());
    e["weight"] = w;
    out.push_back(e);
    ok = r.ok;
  }
  return out;
}

inline json morphism_json(const LInftyMorphism& f, int max_weight, bool& ok) {
  json out = json::array();
  ok = true;
  for (int w = 1; w <= max_weight && ok; ++w) {
    auto r = check_linfty_morphism(f, static_cast<std::size_t>(w));
    json e = word_check_json(r, f.target().space());
    e["weight"] = w;
    out.push_back(e);
    ok = r.ok;
  }
  return out;
}

inline ArtinAlgebra artin_from(const std::vector<NamedDocument>& docs, const Options& opt, int default_order) {
  if (const auto* a = optional_one<ArtinAlgebra>(docs, "artin")) {
    if (opt.order) throw UsageError("give either an artin document or --order, not both");
    return *a;
  }
  const int order = opt.order.value_or(default_order);
  if (order < 1) throw UsageError("--order must be at least 1");
  return ArtinAlgebra::truncated({"t"}, order);
}

inline json artin_summary(const ArtinAlgebra& A) {
  return json{{"variables", A.variables()}, {"max_ideal_dim", A.max_ideal_dim()}, {"nilpotency_order", A.nilpotency_order()}};
}

inline Cdga hitchin_base(const std::vector<NamedDocument>& docs, const io::HitchinDocument& h) {
  const CdgaData* extra = optional_one<CdgaData>(docs, "cdga");
  if (extra && h.base) throw UsageError("hitchin pair already carries a base cdga");
  if (extra) return Cdga(*extra);
  if (h.base) return Cdga(*h.base);
  return Cdga::ground_field();
}

inline MVector random_gauge(const Dgla& L, const ArtinAlgebra& A, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coeff(-2, 2);
  MVector a;
  for (const auto& m : A.monomials()) {
    if (is_unit_monomial(m)) continue;
    Vector v;
    for (auto i : L.space().indices_of_degree(0)) add_term(v, i, coeff(rng));
    add_scaled(a, m, v, 1);
  }
  return a;
}

inline Report check_dgla_cmd(const std::vector<NamedDocument>& docs) {
  const auto* L = optional_one<DglaData>(docs, "dgla");
  const auto* A = optional_one<CdgaData>(docs, "cdga");
  if ((L == nullptr) == (A == nullptr)) throw UsageError("check-dgla expects one dgla or one cdga document");
  Report rep;
  if (L) {
    auto r = check_dgla(*L);
    rep.body["structure"] = "dgla";
    rep.body["result"] = check_json(r, L->space);
    rep.exit_code = r.ok ? kPass : kCheckFailed;
  } else {
    auto r = check_cdga(*A);
    rep.body["structure"] = "cdga";
    rep.body["result"] = check_json(r, A->space);
    rep.exit_code = r.ok ? kPass : kCheckFailed;
  }
  return rep;
}

inline Report check_linfty_cmd(const std::vector<NamedDocument>& docs, const Options& opt) {
  const auto* S = optional_one<LInftyStructure>(docs, "linfty");
  const auto* L = optional_one<DglaData>(docs, "dgla");
  if ((S == nullptr) == (L == nullptr)) throw UsageError("check-linfty expects one linfty or one dgla document");
  const LInftyStructure structure = S ? *S : linfty_from_dgla_data(*L);
  Report rep;
  bool ok = true;
  rep.body["source"] = S ? "linfty" : "dgla";
  rep.body["weights"] = codifferential_json(structure, opt.weight, ok);
  rep.exit_code = ok ? kPass : kCheckFailed;
  return rep;
}

inline Report check_morphism_cmd(const std::vector<NamedDocument>& docs, const Options& opt) {
  const auto& M = exactly_one<io::MorphismDocument>(docs, "linfty-morphism");
  Report rep;
  bool ok_s = true, ok_t = true, ok_f = true;
  rep.body["source_codifferential"] = codifferential_json(M.source, opt.weight, ok_s);
  rep.body["target_codifferential"] = codifferential_json(M.target, opt.weight, ok_t);
  rep.body["morphism"] = morphism_json(M.morphism(), opt.weight, ok_f);
  rep.exit_code = ok_s && ok_t && ok_f ? kPass : kCheckFailed;
  return rep;
}

inline Report cohomology_cmd(const std::vector<NamedDocument>& docs) {
  Report rep;
  auto run = [&](const GradedSpace& V, const GradedMap& d) {
    try {
      rep.body["cohomology"] = cohomology_json(complex_cohomology(V, d));
    } catch (const NotAComplex& e) {
      rep.body["error"] = e.what();
      rep.body["witness"] = {{"element", e.witness()}, {"d_squared", vec(V, e.value())}};
      rep.exit_code = kCheckFailed;
    }
  };
  if (const auto* L = optional_one<DglaData>(docs, "dgla")) {
    run(L->space, L->d);
  } else if (const auto* A = optional_one<CdgaData>(docs, "cdga")) {
    run(A->space, A->d);
  } else if (const auto* S = optional_one<LInftyStructure>(docs, "linfty")) {
    GradedSpace shifted = S->space().shifted(1);
    run(shifted, S->linear_part());
  } else if (const auto* H = optional_one<io::HitchinDocument>(docs, "hitchin-pair")) {
    rep.body["cohomology"] = cohomology_json(complex_C_cohomology(H->pair, hitchin_base(docs, *H)));
  } else {
    throw UsageError("cohomology expects a dgla, cdga, linfty or hitchin-pair document");
  }
  return rep;
}

inline json direction_json(const McDirection& d, const Dgla& L, const ArtinAlgebra& A) {
  json fo = json::array();
  for (const auto& v : d.first_order) fo.push_back(vec(L.space(), v));
  json out{{"first_order", fo}, {"reached_order", d.reached_order}};
  if (d.obstruction) {
    const auto& o = *d.obstruction;
    out["obstruction"] = {{"order", o.order},
                          {"monomial", monomial_name(A, o.monomial)},
                          {"class", coords(o.class_coordinates)},
                          {"cocycle", vec(L.space(), o.cocycle)}};
  }
  if (d.solution) out["solution"] = mvec(L.space(), A, *d.solution);
  else out["partial"] = mvec(L.space(), A, d.partial);
  return out;
}

inline Report mc_solve_cmd(const std::vector<NamedDocument>& docs, const Options& opt) {
  const Dgla L(exactly_one<DglaData>(docs, "dgla"));
  const ArtinAlgebra A = artin_from(docs, opt, 3);
  auto res = mc_solve(L, A);
  Report rep;
  rep.body["artin"] = artin_summary(A);
  rep.body["tangent_dim"] = res.tangent.dimension;
  rep.body["obstruction_space_dim"] = res.obstruction_space.dimension;
  json h2 = json::array();
  for (const auto& r : res.obstruction_space.representatives) h2.push_back(vec(L.space(), r));
  rep.body["obstruction_basis"] = h2;
  json dirs = json::array();
  bool all_mc = true;
  for (const auto& d : res.directions) {
    dirs.push_back(direction_json(d, L, A));
    if (d.solution) all_mc = all_mc && is_mc(*d.solution, L, A);
  }
  rep.body["directions"] = dirs;
  rep.body["solutions_are_mc"] = all_mc;
  if (!all_mc) rep.exit_code = kCheckFailed;
  if (opt.seed) {
    std::mt19937_64 rng(*opt.seed);
    json checks = json::array();
    for (const auto& sol : res.solutions()) {
      MVector a = random_gauge(L, A, rng);
      MVector y = gauge_act(a, sol, L, A);
      const bool mc = is_mc(y, L, A);
      const bool eq = mc && gauge_equivalent(sol, y, L, A).equivalent;
      checks.push_back({{"gauge", mvec(L.space(), A, a)}, {"image_is_mc", mc}, {"found_equivalent", eq}});
      if (!mc || !eq) rep.exit_code = kCheckFailed;
    }
    rep.body["gauge_checks"] = checks;
  }
  return rep;
}

inline void require_same_artin(const io::McElementDocument& x, const ArtinAlgebra& A) {
  if (!(x.artin == A)) throw UsageError("MC elements are over different Artin algebras");
}

inline Report gauge_equiv_cmd(const std::vector<NamedDocument>& docs) {
  const Dgla L(exactly_one<DglaData>(docs, "dgla"));
  auto mcs = all_of_kind<io::McElementDocument>(docs);
  if (mcs.size() != 2) throw UsageError("gauge-equiv expects two mc-element documents");
  const ArtinAlgebra& A = mcs[0]->artin;
  require_same_artin(*mcs[1], A);
  const MVector x = mcs[0]->resolve(L.space()), y = mcs[1]->resolve(L.space());
  Report rep;
  rep.body["artin"] = artin_summary(A);
  const bool mx = is_mc(x, L, A), my = is_mc(y, L, A);
  rep.body["inputs_are_mc"] = {mx, my};
  if (!mx || !my) {
    rep.exit_code = kCheckFailed;
    return rep;
  }
  auto g = gauge_equivalent(x, y, L, A);
  rep.body["equivalent"] = g.equivalent;
  if (g.equivalent) {
    rep.body["witness"] = mvec(L.space(), A, g.witness);
  } else {
    rep.body["failed_order"] = g.failed_order;
    rep.body["failed_monomial"] = monomial_name(A, g.failed_monomial);
    rep.body["discrepancy"] = vec(L.space(), g.discrepancy);
    rep.body["certificate_exact"] = L.cohomology().at(0).cocycle_dim == 0 || g.failed_order == 1;
    rep.exit_code = kCheckFailed;
  }
  return rep;
}

struct HitchinSetup {
  HitchinDgla M;
  HitchinTarget W;
};

inline HitchinSetup hitchin_setup(const std::vector<NamedDocument>& docs) {
  const auto& H = exactly_one<io::HitchinDocument>(docs, "hitchin-pair");
  Cdga A = hitchin_base(docs, H);
  HitchinDgla M = build_hitchin_dgla(A, H.pair);
  HitchinTarget W(A, H.pair);
  return HitchinSetup{std::move(M), std::move(W)};
}

inline Report hitchin_build_cmd(const std::vector<NamedDocument>& docs) {
  auto [M, W] = hitchin_setup(docs);
  Report rep;
  rep.body["rank"] = M.pair.rank();
  rep.body["dim_L"] = M.pair.dim_l();
  rep.body["base_dim"] = M.base.dim();
  rep.body["lie_dim"] = M.lie.dim();
  rep.body["total_dim"] = M.total.dim();
  rep.body["target_dim"] = W.space().dim();
  rep.body["dgla_check"] = check_json(check_dgla(M.total.data()), M.total.space());
  rep.body["cohomology"] = cohomology_json(M.total.cohomology());
  rep.body["target_cohomology"] = cohomology_json(W.cohomology());
  return rep;
}

inline Report hitchin_verify_cmd(const std::vector<NamedDocument>& docs, const Options& opt) {
  auto [M, W] = hitchin_setup(docs);
  auto h = build_hitchin_morphism(M, W);
  Report rep;
  bool ok = true;
  rep.body["morphism"] = morphism_json(h, opt.weight, ok);
  // h_1 ∘ d = d ∘ h_1 on every basis element
  json chain = {{"ok", true}};
  const auto& V = M.total.space();
  for (std::size_t i = 0; i < V.dim() && chain["ok"].get<bool>(); ++i) {
    Vector lhs = h.component(SymWord{{i}});
    lhs = W.dgla().d().apply(lhs);
    Vector rhs;
    for (const auto& [j, c] : M.total.d().column(i)) add_scaled(rhs, h.component(SymWord{{j}}), c);
    if (lhs != rhs) chain = {{"ok", false}, {"element", V.name(i)}, {"discrepancy", vec(W.space(), lhs - rhs)}};
  }
  rep.body["chain_map"] = chain;
  if (!ok || !chain["ok"].get<bool>()) rep.exit_code = kCheckFailed;
  return rep;
}

inline Report pushforward_cmd(const std::vector<NamedDocument>& docs) {
  const auto& x = exactly_one<io::McElementDocument>(docs, "mc-element");
  Report rep;
  rep.body["artin"] = artin_summary(x.artin);
  if (const auto* F = optional_one<io::MorphismDocument>(docs, "linfty-morphism")) {
    auto f = F->morphism();
    MVector xs = x.resolve(F->source.space());
    if (!is_linfty_mc(xs, F->source, x.artin)) {
      rep.body["input_is_mc"] = false;
      rep.exit_code = kCheckFailed;
      return rep;
    }
    MVector y = pushforward_mc(f, xs, x.artin);
    const bool mc = is_linfty_mc(y, F->target, x.artin);
    rep.body["input_is_mc"] = true;
    rep.body["image"] = mvec(F->target.space(), x.artin, y);
    rep.body["image_is_mc"] = mc;
    if (!mc) rep.exit_code = kCheckFailed;
    return rep;
  }
  auto [M, W] = hitchin_setup(docs);
  MVector xs = x.resolve(M.total.space());
  if (!is_mc(xs, M.total, x.artin)) {
    rep.body["input_is_mc"] = false;
    rep.exit_code = kCheckFailed;
    return rep;
  }
  MVector y = pushforward_mc(build_hitchin_morphism(M, W), xs, x.artin);
  const bool mc = is_linfty_mc(y, W.structure(), x.artin);
  rep.body["input_is_mc"] = true;
  rep.body["image"] = mvec(W.space(), x.artin, y);
  rep.body["image_is_mc"] = mc;
  if (!mc) rep.exit_code = kCheckFailed;
  return rep;
}

inline Report hitchin_map_cmd(const std::vector<NamedDocument>& docs) {
  const auto& x = exactly_one<io::McElementDocument>(docs, "mc-element");
  auto [M, W] = hitchin_setup(docs);
  MVector xs = x.resolve(M.total.space());
  Report rep;
  rep.body["artin"] = artin_summary(x.artin);
  if (!is_mc(xs, M.total, x.artin)) {
    rep.body["input_is_mc"] = false;
    rep.exit_code = kCheckFailed;
    return rep;
  }
  auto im = hitchin_map(xs, M, W, x.artin);
  rep.body["input_is_mc"] = true;
  json comps = json::array();
  for (std::size_t k = 1; k <= W.rank(); ++k)
    comps.push_back({{"k", k}, {"value", mvec(W.space(), x.artin, W.component(im.direct, static_cast<int>(k)))}});
  rep.body["components"] = comps;
  rep.body["pushforward"] = mvec(W.space(), x.artin, im.pushforward);
  rep.body["routes_agree"] = im.agree();
  if (!im.agree()) rep.exit_code = kCheckFailed;
  return rep;
}

inline Report obstruction_cmd(const std::vector<NamedDocument>& docs, const Options& opt) {
  auto [M, W] = hitchin_setup(docs);
  const ArtinAlgebra A = artin_from(docs, opt, 3);
  std::vector<Vector> tangent = M.total.cohomology().at(1).representatives;
  if (opt.seed) {
    // random combinations of the representatives reach mixed obstructions
    std::mt19937_64 rng(*opt.seed);
    std::uniform_int_distribution<int> coeff(-3, 3);
    const std::size_t base = tangent.size();
    for (std::size_t s = 0; s < 2 * base; ++s) {
      Vector v;
      for (std::size_t j = 0; j < base; ++j) add_scaled(v, tangent[j], coeff(rng));
      if (!v.empty()) tangent.push_back(std::move(v));
    }
  }
  auto res = mc_solve(M.total, A, tangent);
  Report rep;
  rep.body["artin"] = artin_summary(A);
  rep.body["tangent_dim"] = res.tangent.dimension;
  rep.body["obstruction_space_dim"] = res.obstruction_space.dimension;
  json obs = json::array();
  bool all_zero = true;
  for (const auto& o : res.obstructions()) {
    auto img = obstruction_kernel_map(o.cocycle, M, W);
    all_zero = all_zero && img.is_zero();
    obs.push_back({{"order", o.order},
                   {"monomial", monomial_name(A, o.monomial)},
                   {"class", coords(o.class_coordinates)},
                   {"cocycle", vec(M.total.space(), o.cocycle)},
                   {"image", vec(W.space(), img.image)},
                   {"image_class", coords(img.class_coordinates)},
                   {"image_class_zero", img.is_zero()}});
  }
  rep.body["obstructions"] = obs;
  rep.body["all_in_kernel"] = all_zero;
  if (!all_zero) rep.exit_code = kCheckFailed;
  return rep;
}

}  // namespace detail

/// Dispatches one command. Usage problems raise UsageError; kernel invariant
/// violations raise the kernel's own exceptions.
inline Report run_command(const std::string& command, const std::vector<NamedDocument>& docs, const Options& opt) {
  if (opt.weight < 1) throw UsageError("--weight must be at least 1");
  Report rep;
  if (command == "emit") {
    if (docs.size() != 1) throw UsageError("emit expects exactly one document");
    rep.body = io::emit(docs.front().doc);
    return rep;
  }
  if (command == "check-dgla") rep = detail::check_dgla_cmd(docs);
  else if (command == "check-linfty") rep = detail::check_linfty_cmd(docs, opt);
  else if (command == "check-morphism") rep = detail::check_morphism_cmd(docs, opt);
  else if (command == "cohomology") rep = detail::cohomology_cmd(docs);
  else if (command == "mc-solve") rep = detail::mc_solve_cmd(docs, opt);
  else if (command == "gauge-equiv") rep = detail::gauge_equiv_cmd(docs);
  else if (command == "hitchin-build") rep = detail::hitchin_build_cmd(docs);
  else if (command == "hitchin-verify") rep = detail::hitchin_verify_cmd(docs, opt);
  else if (command == "pushforward") rep = detail::pushforward_cmd(docs);
  else if (command == "hitchin-map") rep = detail::hitchin_map_cmd(docs);
  else if (command == "obstruction") rep = detail::obstruction_cmd(docs, opt);
  else throw UsageError("unknown command \"" + command + "\"");

  json head{{"command", command}};
  json inputs = json::array();
  for (const auto& d : docs) inputs.push_back({{"file", d.origin}, {"kind", io::kind_name(d.doc)}});
  head["inputs"] = inputs;
  json o{{"weight", opt.weight}};
  if (opt.order) o["order"] = *opt.order;
  if (opt.seed) o["seed"] = *opt.seed;
  head["options"] = o;
  head["status"] = rep.exit_code == kPass ? "pass" : "fail";
  head.update(rep.body);
  rep.body = std::move(head);
  return rep;
}

/// Report for a kernel invariant violation raised while loading or running.
inline Report invalid_input_report(const std::string& command, const std::exception& e) {
  Report rep;
  rep.exit_code = kCheckFailed;
  rep.body = json{{"command", command}, {"status", "invalid"}, {"error", e.what()}};
  if (const auto* h = dynamic_cast<const InvalidHiggsField*>(&e)) {
    json m = json::array();
    for (std::size_t i = 0; i < h->component().rows(); ++i) {
      json row = json::array();
      for (std::size_t j = 0; j < h->component().cols(); ++j) row.push_back(to_string(h->component()(i, j)));
      m.push_back(row);
    }
    rep.body["witness"] = {{"wedge", {h->witness().first, h->witness().second}}, {"component", m}};
  }
  if (const auto* a = dynamic_cast<const AxiomViolation*>(&e)) {
    rep.body["witness"] = {{"axiom", a->result().axiom}, {"elements", a->result().witness}};
  }
  return rep;
}

}  // namespace dglinf::cli
