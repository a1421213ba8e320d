// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>

#include "dglinf/io.hpp"
#include "support.hpp"

using namespace dglinf;
using namespace dglinf::testing;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

/// Accumulates failures; the first one is kept as the reported reason.
struct Tally {
  Outcome out;
  void require(bool cond, const std::string& what) {
    if (!cond && out.ok) {
      out.ok = false;
      out.detail = what;
    }
  }
};

int criterion(int id, const std::string& name, double budget, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (o.ok && secs > budget) o = {false, "over time budget"};
  std::ostringstream line;
  line.setf(std::ios::fixed);
  line.precision(2);
  line << "criterion " << id << ": " << (o.ok ? "PASS" : "FAIL") << "  " << name << "  [" << secs << "s / " << budget
       << "s]";
  if (!o.detail.empty()) line << "  " << o.detail;
  std::cout << line.str() << std::endl;
  return o.ok ? 0 : 1;
}

std::vector<std::pair<std::string, TensorSigns>> sign_mutations() {
  std::vector<std::pair<std::string, std::function<void(TensorSigns&)>>> edits{
      {"d: drop |a|", [](TensorSigns& s) { s.d_exp_a = 0; }},
      {"d: add |x|", [](TensorSigns& s) { s.d_exp_x = 1; }},
      {"d: add |a||x|", [](TensorSigns& s) { s.d_exp_ax = 1; }},
      {"bracket: drop |b||x|", [](TensorSigns& s) { s.br_bx = 0; }},
      {"bracket: add |a||y|", [](TensorSigns& s) { s.br_ay = 1; }},
      {"bracket: add |x||y|", [](TensorSigns& s) { s.br_xy = 1; }},
      {"bracket: add |a|", [](TensorSigns& s) { s.br_a = 1; }},
      {"bracket: add |x|", [](TensorSigns& s) { s.br_x = 1; }},
  };
  std::vector<std::pair<std::string, TensorSigns>> out;
  for (auto& [name, edit] : edits) {
    TensorSigns s;
    edit(s);
    out.emplace_back(name, s);
  }
  return out;
}

Outcome tensor_and_hom() {
  Rng rng(1001);
  Tally t;
  int tensors = 0, homs = 0;
  while (tensors < 20) {
    Cdga A = random_cdga(rng, 3);
    Dgla L(random_dgla(rng));
    if (L.dim() > 6) continue;
    auto r = check_dgla(tensor_cdga_dgla(A, L).data());
    t.require(r.ok, "tensor instance failed " + r.axiom);
    ++tensors;
  }
  for (; homs < 20; ++homs) {
    auto [V, d] = random_complex(rng, 1 + static_cast<std::size_t>(homs % 6));
    auto r = check_dgla(hom_dgla(V, d).data());
    t.require(r.ok, "hom instance failed " + r.axiom);
  }
  Dgla L(hom_cone_data());
  int caught = 0;
  for (const auto& [name, signs] : sign_mutations()) {
    bool failed_everywhere = true;
    for (const Cdga& A : {acyclic_base(), nilmanifold_base()})
      failed_everywhere = failed_everywhere && !check_dgla(detail::tensor_presentation(A, L, signs)).ok;
    t.require(failed_everywhere, "mutation not detected: " + name);
    caught += failed_everywhere;
  }
  if (t.out.ok) t.out.detail = std::to_string(tensors) + " tensor + " + std::to_string(homs) + " hom instances, " +
                               std::to_string(caught) + "/8 mutations caught";
  return t.out;
}

Outcome codifferential() {
  Rng rng(1002);
  Tally t;
  for (int i = 0; i < 12; ++i) {
    auto r = check_codifferential(linfty_from_dgla_data(random_dgla(rng)), 4);
    t.require(r.ok, "Q∘Q != 0 on " + r.word_name);
  }
  int mutants = 0;
  for (int i = 0; i < 12; ++i) {
    auto S = linfty_from_dgla_data(random_jacobi_mutant(rng));
    auto r = check_codifferential(S, 3);
    const bool witnessed = !r.ok && r.word.weight() == 3 && !r.discrepancy.empty();
    t.require(witnessed, "jacobi mutant not caught at weight 3");
    mutants += witnessed;
  }
  if (t.out.ok) t.out.detail = "12 dglas pass at weight 4, " + std::to_string(mutants) + " mutants caught with witnesses";
  return t.out;
}

Outcome trace_commutator() {
  Rng rng(1003);
  Tally t;
  for (int i = 0; i < 50; ++i) {
    const std::size_t r = 1 + static_cast<std::size_t>(i % 4);
    const int k = 1 + (i / 4) % 5;
    QMatrix A = random_matrix(rng, r), B = random_matrix(rng, r);
    auto c = trace_commutator_oracle(A, B, k);
    // Σ_i A^i [B,A] A^{k-1-i}, expanded by hand
    QMatrix direct(r, r);
    for (int e = 0; e < k; ++e)
      direct = direct + detail::power(A, e) * detail::commutator(B, A) * detail::power(A, k - 1 - e);
    t.require(c.ok && c.t_coefficient == direct && c.trace == 0, "pair " + std::to_string(i));
  }
  if (t.out.ok) t.out.detail = "50 pairs";
  return t.out;
}

Outcome hitchin_morphism() {
  Rng rng(1004);
  Tally t;
  int count = 0;
  for (int i = 0; i < 12; ++i) {
    const std::size_t r = 1 + static_cast<std::size_t>(i % 3), nl = 1 + static_cast<std::size_t>(i / 3 % 2);
    const std::size_t lie_dim = r * r * (nl == 1 ? 2 : 4);
    Cdga A = Cdga::ground_field();
    for (const Cdga& candidate : {omega_base(), torus_base()})
      if (candidate.dim() * lie_dim <= 40 && (i % 2 || candidate.dim() > A.dim())) A = candidate;
    auto P = random_pair(rng, r, nl);
    HitchinDgla M = build_hitchin_dgla(A, P);
    HitchinTarget W(A, P);
    auto h = build_hitchin_morphism(M, W);
    for (std::size_t idx = 0; idx < M.total.dim(); ++idx) {
      Vector lhs = W.dgla().d().apply(h.component(SymWord{{idx}}));
      Vector rhs;
      for (const auto& [j, c] : M.total.d().column(idx)) add_scaled(rhs, h.component(SymWord{{j}}), c);
      t.require(lhs == rhs, "chain map fails on " + M.total.space().name(idx));
    }
    auto res = check_linfty_morphism(h, 4);
    t.require(res.ok, "morphism identity fails on " + res.word_name);
    ++count;
  }
  t.require(count >= 10, "too few instances");
  if (t.out.ok) t.out.detail = std::to_string(count) + " pairs, weights 1-4";
  return t.out;
}

Rational factorial(int n) {
  Rational f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

Outcome polarization_and_map() {
  Rng rng(1005);
  Tally t;
  int identities = 0;
  for (int i = 0; i < 21; ++i) {
    const std::size_t r = 1 + static_cast<std::size_t>(i % 3), nl = 1 + static_cast<std::size_t>(i % 2);
    auto P = random_pair(rng, r, nl);
    HitchinDgla M = build_hitchin_dgla(Cdga::ground_field(), P);
    HitchinTarget W(Cdga::ground_field(), P);
    Vector y = random_higgs_vector(rng, M, 0);
    auto Y = matrix_parts(y, M, 0);
    std::vector<QMatrix> shifted;
    for (std::size_t l = 0; l < nl; ++l) shifted.push_back(P.theta(l) + Y[l]);
    for (int k = 1; k <= static_cast<int>(r); ++k) {
      Vector lhs, rhs;
      for (int n = 1; n <= k; ++n)
        add_scaled(lhs, g_coefficient(k, std::vector<Vector>(static_cast<std::size_t>(n), y), M, W), 1 / factorial(n));
      for (const auto& [m, c] : trace_power_expansion(shifted, {}, k)) add_term(rhs, W.index(0, Multidegree(m.begin(), m.end())), c);
      for (const auto& [m, c] : trace_power_expansion(P.theta(), {}, k)) add_term(rhs, W.index(0, Multidegree(m.begin(), m.end())), -c);
      t.require(lhs == rhs, "polarization fails at r=" + std::to_string(r) + " k=" + std::to_string(k));
      ++identities;
    }
  }
  auto B = ArtinAlgebra::truncated({"t"}, 4);
  int solutions = 0;
  for (int i = 0; i < 8; ++i) {
    const Cdga A = i % 2 ? omega_base() : Cdga::ground_field();
    const std::size_t r = 2 + static_cast<std::size_t>(i / 2 % 2);
    auto fam = random_commuting_family(rng, r, 1 + static_cast<std::size_t>(i / 4), B);
    HitchinDgla M = build_hitchin_dgla(A, fam.pair);
    HitchinTarget W(A, fam.pair);
    auto h = build_hitchin_morphism(M, W);
    std::vector<MVector> xs{fam.x};
    if (M.total.dim() <= 32) {
      auto res = mc_solve(M.total, B);
      for (auto& x : res.solutions()) xs.push_back(std::move(x));
    }
    for (const auto& x : xs) {
      t.require(is_mc(x, M.total, B), "solution is not MC");
      t.require(hitchin_map(x, M, W, h, B).agree(), "direct and pushforward routes differ");
      ++solutions;
    }
  }
  if (t.out.ok)
    t.out.detail = std::to_string(identities) + " identities, " + std::to_string(solutions) + " MC solutions over Q[t]/(t^4)";
  return t.out;
}

Outcome gauge() {
  Rng rng(1006);
  Tally t;
  int triples = 0;
  for (int order : {3, 4}) {
    auto B = ArtinAlgebra::truncated({"t"}, order);
    for (int i = 0; i < 50; ++i) {
      auto fam = random_commuting_family(rng, 2 + static_cast<std::size_t>(i % 2), 1 + static_cast<std::size_t>(i / 2 % 2), B);
      Dgla L = higgs_lie_dgla(fam.pair);
      MVector a = random_m_element(rng, L.space(), 0, B), b = random_m_element(rng, L.space(), 0, B);
      MVector bx = gauge_act(b, fam.x, L, B);
      t.require(is_mc(bx, L, B), "gauge action leaves the MC locus");
      t.require(gauge_act(bch_product(a, b, L, B), fam.x, L, B) == gauge_act(a, bx, L, B), "bch composition fails");
      ++triples;
    }
  }
  if (t.out.ok) t.out.detail = std::to_string(triples) + " triples over m^3=0 and m^4=0";
  return t.out;
}

Outcome obstructions() {
  Rng rng(1007);
  Tally t;
  const std::vector<Cdga> bases{Cdga::ground_field(), omega_base(), torus_base()};
  auto B = ArtinAlgebra::truncated({"t"}, 3);
  int dglas = 0, total = 0;
  for (int attempt = 0; attempt < 200 && dglas < 12; ++attempt) {
    const std::size_t r = 2 + static_cast<std::size_t>(attempt % 2), nl = 1 + static_cast<std::size_t>(attempt / 2 % 2);
    const Cdga& A = bases[static_cast<std::size_t>(attempt) % bases.size()];
    if (A.dim() * r * r * (nl == 1 ? 2 : 4) > 40) continue;
    auto P = random_pair(rng, r, nl);
    HitchinDgla M = build_hitchin_dgla(A, P);
    if (M.total.cohomology().dim(2) == 0) continue;
    HitchinTarget W(A, P);
    auto tangent = tangent_with_combos(rng, M.total.cohomology().at(1).representatives, 6);
    for (const auto& o : mc_solve(M.total, B, tangent).obstructions()) {
      t.require(obstruction_kernel_map(o.cocycle, M, W).is_zero(), "obstruction with nonzero image");
      Vector moved = o.cocycle;
      add_scaled(moved, M.total.differential(random_higgs_vector(rng, M, 0, 80)), 1);
      t.require(obstruction_kernel_map(moved, M, W).is_zero(), "cohomologous representative with nonzero image");
      ++total;
    }
    ++dglas;
  }
  t.require(dglas >= 10, "fewer than 10 dglas with nonzero H^2");
  t.require(total >= 10, "too few obstructions to be meaningful");
  if (t.out.ok) t.out.detail = std::to_string(dglas) + " dglas, " + std::to_string(total) + " obstructions in the kernel";
  return t.out;
}

Outcome g_coefficients() {
  Rng rng(1008);
  Tally t;
  const std::vector<Cdga> bases{Cdga::ground_field(), omega_base(), torus_base()};
  int tuples = 0, cases = 0;
  for (std::size_t r = 1; r <= 3; ++r)
    for (std::size_t nl = 1; nl <= 2; ++nl)
      for (std::size_t n = 1; n <= 3; ++n)
        for (int k = 1; k <= static_cast<int>(r); ++k) {
          ++cases;
          for (int rep = 0; rep < 3; ++rep) {
            const Cdga& A = bases[static_cast<std::size_t>(tuples) % bases.size()];
            auto P = random_pair(rng, r, nl);
            HitchinDgla M = build_hitchin_dgla(A, P);
            HitchinTarget W(A, P);
            std::vector<Vector> args;
            for (std::size_t i = 0; i < n; ++i) args.push_back(random_higgs_vector(rng, M, A.dim() > 1 ? rand_int(rng, 0, 1) : 0));
            t.require(g_coefficient(k, args, M, W) == oracle_g_coefficient(k, args, M, W),
                      "mismatch at r=" + std::to_string(r) + " dimL=" + std::to_string(nl) + " n=" + std::to_string(n) +
                          " k=" + std::to_string(k));
            ++tuples;
          }
        }
  t.require(tuples >= 100, "fewer than 100 tuples");
  if (t.out.ok) t.out.detail = std::to_string(cases) + " (k,n,r,dimL) cases, " + std::to_string(tuples) + " tuples";
  return t.out;
}

struct Run {
  int code;
  std::string out;
};

Run run_cli(const std::string& args) {
  const std::string cmd = std::string(DGLINF_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return {-1, ""};
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
  const int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

Outcome cli() {
  Tally t;
  const std::string dir = DGLINF_SAMPLES_DIR;
  auto s = [&](const std::string& f) { return dir + "/" + f; };
  const std::vector<std::string> commands{
      "check-dgla " + s("gl2.dgla.json"),
      "cohomology " + s("cone.dgla.json"),
      "check-linfty " + s("massey.linfty.json"),
      "check-morphism " + s("massey_identity.morphism.json"),
      "mc-solve " + s("e1e2.dgla.json") + " --order 3",
      "gauge-equiv " + s("cone.dgla.json") + " " + s("cone_z.mc.json") + " " + s("cone_zy.mc.json"),
      "hitchin-build " + s("higgs_r2_torus.hitchin.json"),
      "hitchin-verify " + s("higgs_r3_l2.hitchin.json") + " --weight 3",
      "pushforward " + s("massey_identity.morphism.json") + " " + s("massey_t.mc.json"),
      "hitchin-map " + s("higgs_r2.hitchin.json") + " " + s("higgs_r2_y.mc.json"),
      "obstruction " + s("higgs_r2_torus_zero.hitchin.json") + " --seed 7",
      "hitchin-build " + s("invalid/noncommuting.hitchin.json"),
  };
  for (const auto& c : commands) {
    const Run first = run_cli(c);
    t.require(!first.out.empty(), "no report from: " + c);
    for (int i = 0; i < 2; ++i) {
      const Run again = run_cli(c);
      t.require(again.out == first.out && again.code == first.code, "reports differ for: " + c);
    }
  }
  int samples = 0;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (!e.is_regular_file() || e.path().extension() != ".json") continue;
    const std::string name = e.path().filename().string();
    auto doc = io::parse_spec(e.path().string());
    const std::string text = io::dump(io::emit(doc));
    auto again = io::parse_text(text);
    t.require(again == doc, "kernel objects differ after round trip: " + name);
    t.require(io::dump(io::emit(again)) == text, "emitted text is not a fixed point: " + name);
    t.require(run_cli("emit " + e.path().string()).out == text, "cli emit differs from library emit: " + name);
    ++samples;
  }
  if (t.out.ok) t.out.detail = std::to_string(commands.size()) + " commands x3 identical, " + std::to_string(samples) + " samples round-trip";
  return t.out;
}

}  // namespace

int main() {
  int failures = 0;
  failures += criterion(1, "tensor/hom dglas valid, sign mutations caught", 10, tensor_and_hom);
  failures += criterion(2, "codifferential check and Jacobi mutants", 30, codifferential);
  failures += criterion(3, "trace commutator oracle", 20, trace_commutator);
  failures += criterion(4, "Hitchin morphism identities", 60, hitchin_morphism);
  failures += criterion(5, "polarization and Hitchin map routes", 30, polarization_and_map);
  failures += criterion(6, "gauge action and BCH", 20, gauge);
  failures += criterion(7, "obstructions land in the kernel", 60, obstructions);
  failures += criterion(8, "g coefficients against full expansion", 60, g_coefficients);
  failures += criterion(9, "CLI determinism and sample round trips", 10, cli);
  std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
