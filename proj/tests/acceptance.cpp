// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

#include "quiverhh/cli.hpp"
#include "quiverhh/cohomology.hpp"
#include "quiverhh/error.hpp"
#include "support.hpp"

using namespace quiverhh;
using namespace testing;

namespace {

struct Criterion {
  std::vector<std::string> problems;
  void expect(bool ok, const std::string& what) {
    if (!ok) problems.push_back(what);
  }
};

struct Embedded {
  QuiverPtr q;
  RotationSystem rot;
  PathBasisPtr basis;
  std::vector<FaceCycle> faces;
  explicit Embedded(const QuiverPtr& quiver, const RotationSystem& r)
      : q(quiver), rot(r), basis(PathBasis::create(q)), faces(trace_faces(*q, rot)) {}
  explicit Embedded(const std::string& name) : Embedded(fixture(name).quiver, *fixture(name).rotation()) {}
};

LinearOperator dpp(const Embedded& e, const std::string& r, const std::string& s) {
  return d_rs(e.basis, *e.q->find_arrow(r), arrow_path(*e.q, s));
}

// A reduced coset vector equal to ±unit(i); returns the sign or 0.
int unit_sign(const RationalVector& v, std::size_t i) {
  for (std::size_t k = 0; k < v.size(); ++k)
    if (k != i && !is_zero(v[k])) return 0;
  if (v[i] == 1) return 1;
  if (v[i] == -1) return -1;
  return 0;
}

std::string str(std::size_t n) { return std::to_string(n); }

// ---------------------------------------------------------------------------

void kronecker(Criterion& c) {
  const Embedded k2("k2");
  const auto der = DerivationBasis::canonical(k2.basis);
  std::vector<std::string> labels;
  for (const auto& m : der.members()) labels.push_back(m.label);
  std::vector<std::string> expected{"Inner(p1)", "Inner(p2)", "EdgePair(p1,p1)", "EdgePair(p2,p2)",
                                    "EdgePair(p1,p2)", "EdgePair(p2,p1)"};
  std::sort(labels.begin(), labels.end());
  std::sort(expected.begin(), expected.end());
  c.expect(labels == expected, "canonical labels differ");
  c.expect(derivation_space_oracle(k2.basis).size() == 6, "oracle Der dimension is not 6");
  const std::size_t inner = rank(inner_subspace(der));
  c.expect(inner == 3, "inner rank " + str(inner));

  const auto hb = hh1_basis(k2.basis, k2.rot);
  c.expect(hb.dimension == 3 && hh1_dimension(*k2.q, k2.rot) == 3 && path_count_dimension(*k2.q) == 3,
           "HH1 dimension is not 3");

  const auto b = boundary_matrix(*k2.q, k2.faces);
  RationalMatrix want(2, 2);
  want(0, 0) = 2, want(0, 1) = -2, want(1, 0) = -2, want(1, 1) = 2;
  c.expect(b == want && rank(b) == 1, "B_Gamma differs from [[2,-2],[-2,2]] or rank != 1");

  // Expected basis {D11 - D22, D12, D21}, compared modulo inner derivations.
  const CosetReducer reducer(hb);
  auto reduce = [&](const LinearOperator& op) { return reducer.reduce(der.coordinates(op)); };
  std::size_t face = 0, al12 = 0, al21 = 0;
  for (std::size_t i = 0; i < hb.reps.size(); ++i) {
    if (hb.reps[i].label == "AL(p1,p2)") al12 = i;
    if (hb.reps[i].label == "AL(p2,p1)") al21 = i;
    if (hb.reps[i].kind == RepKind::Face) face = i;
  }
  c.expect(unit_sign(reduce(dpp(k2, "p1", "p2")), al12) == 1, "D_{p1,p2} is not a representative");
  c.expect(unit_sign(reduce(dpp(k2, "p2", "p1")), al21) == 1, "D_{p2,p1} is not a representative");
  c.expect(unit_sign(reduce(dpp(k2, "p1", "p1") - dpp(k2, "p2", "p2")), face) != 0,
           "D_{p1,p1} - D_{p2,p2} is not ± the face representative");
}

void triangle(Criterion& c) {
  const Embedded e("triangle");
  const Quiver& q = *e.q;
  std::optional<std::size_t> bounded;
  for (std::size_t f = 0; f < e.faces.size(); ++f)
    if (e.faces[f].boundary.size() == 3) bounded = f;
  if (!bounded) return c.expect(false, "no triangular face");
  const auto& face = e.faces[*bounded];
  const auto expected = dpp(e, "p2", "p2") - dpp(e, "p1", "p1") - dpp(e, "p3", "p3");
  const auto ours = face_derivation(e.basis, face);
  int sign = 0;
  if (ours == expected) sign = 1;
  if (ours == expected * Rational(-1)) sign = -1;
  c.expect(sign != 0, "bounded face derivation is not ±(-D11 + D22 - D33)");
  c.expect(face.coefficient(*q.find_arrow("p4")) == 0 && face.coefficient(*q.find_arrow("p5")) == 0,
           "p4 or p5 has nonzero net coefficient");

  const auto der = DerivationBasis::canonical(e.basis);
  const std::size_t oracle = derivation_space_oracle(e.basis).size() - rank(inner_subspace(der));
  c.expect(oracle == 2 && path_count_dimension(q) == 2 && hh1_dimension(q, e.rot) == 2,
           "dimensions (oracle, path_count, formula) not all 2");

  const Rational lambda = adjoint_eigenvalue(e.basis, face, *q.find_arrow("p2"), path_of(q, {"p1", "p3"}));
  c.expect(lambda == Rational(-3 * sign), "eigenvalue " + lambda.get_str() + " for sign " + std::to_string(sign));
}

void rank_theorems(Criterion& c) {
  std::size_t count = 0;
  for (const auto& name : embedded_fixtures()) {
    const Embedded e(name);
    const auto r = combinatorial_report(*e.q, e.rot);
    c.expect(r.rank_cva == e.q->vertex_count() - 1, name + ": rank C_va");
    c.expect(r.rank_cca == r.faces - 1, name + ": rank C_ca");
    c.expect(r.rank_bgamma == r.faces - 1, name + ": rank B_Gamma");
    ++count;
  }
  c.expect(count >= 8, "fewer than 8 fixtures");
}

void euler(Criterion& c) {
  for (const auto& name : embedded_fixtures()) {
    const Embedded e(name);
    const auto r = combinatorial_report(*e.q, e.rot);
    c.expect(e.q->arrow_count() - r.dim_dv_plus_df == 2 * r.genus, name + ": |E| - dim(D_V + D_F) != 2g");
    c.expect(r.disjoint, name + ": D_V and D_F meet");
    if (name == "k4_torus") {
      c.expect(r.genus == 1 && r.quotient_dim == 2, "torus: genus or quotient dimension");
    } else {
      c.expect(r.genus == 0 && r.direct_sum && r.dim_dv_plus_df == r.dim_de, name + ": not a planar direct sum");
    }
  }
}

void oracle_equivalence(Criterion& c) {
  std::size_t used = 0;
  for (const auto& name : all_fixtures()) {
    const auto f = fixture(name);
    if (!is_acyclic(*f.quiver)) continue;
    const auto basis = PathBasis::create(f.quiver);
    if (basis->size() > 60) continue;
    ++used;
    const auto der = DerivationBasis::canonical(basis);
    const auto oracle = derivation_space_oracle(basis);
    c.expect(oracle.size() == der.size(), name + ": oracle " + str(oracle.size()) + " vs canonical " + str(der.size()));
    const std::size_t outer = oracle.size() - rank(inner_subspace(der));
    const auto rot = f.rotation();
    if (!rot) {
      c.expect(false, name + ": no rotation");
      continue;
    }
    const std::size_t formula = hh1_dimension(*f.quiver, *rot);
    const std::size_t path_count = path_count_dimension(*f.quiver);
    c.expect(outer == formula && formula == path_count,
             name + ": " + str(outer) + " / " + str(formula) + " / " + str(path_count));
  }
  c.expect(used >= 8, "only " + str(used) + " fixtures within the path cap");
}

void properties(Criterion& c) {
  std::mt19937 rng(2024);
  std::vector<Embedded> cases;
  for (const auto& name : embedded_fixtures())
    if (name != "grid2x2") cases.emplace_back(name);
  for (int i = 0; i < 12; ++i) {
    const auto q = random_quiver(rng, 5, 3);
    cases.emplace_back(q, random_rotation(rng, *q));
  }

  for (const auto& e : cases) {
    const std::string name = e.q->name();
    const auto der = DerivationBasis::canonical(e.basis);
    std::vector<LinearOperator> built;
    for (const auto& m : der.members()) built.push_back(m.op);
    LinearOperator faces(e.basis), vertices(e.basis);
    for (const auto& f : e.faces) {
      built.push_back(face_derivation(e.basis, f));
      faces += built.back();
    }
    for (std::size_t v = 0; v < e.q->vertex_count(); ++v) {
      built.push_back(inner_derivation(e.basis, Path::trivial(VertexId{v})));
      vertices += built.back();
    }
    std::uniform_int_distribution<std::size_t> pick(0, der.size() - 1);
    for (int k = 0; k < 5 && der.size() > 0; ++k) {
      const std::size_t i = pick(rng), j = pick(rng);
      built.push_back(bracket(der[i].op, der[j].op));
    }
    for (const auto& op : built) c.expect(naive_leibniz(op) && is_derivation(op), name + ": Leibniz fails");
    c.expect(faces.is_zero(), name + ": face derivations do not sum to 0");
    c.expect(vertices.is_zero(), name + ": vertex derivations do not sum to 0");

    std::vector<int> forward(e.q->arrow_count()), backward(e.q->arrow_count());
    std::size_t steps = 0;
    for (const auto& f : e.faces)
      for (const auto& s : f.boundary) {
        (s.direction == Direction::Forward ? forward : backward)[s.arrow.index]++;
        ++steps;
      }
    bool conserved = steps == 2 * e.q->arrow_count();
    for (std::size_t k = 0; k < forward.size(); ++k) conserved = conserved && forward[k] == 1 && backward[k] == 1;
    c.expect(conserved, name + ": dart conservation");

    const auto paths = acyclic_paths(*e.q);
    if (paths.empty()) continue;
    std::uniform_int_distribution<std::size_t> pp(0, paths.size() - 1);
    for (int k = 0; k < 6; ++k) {
      const Path& a = paths[pp(rng)];
      const Path& b = paths[pp(rng)];
      const auto ab = commutator(AlgebraElement(e.q, a), AlgebraElement(e.q, b));
      c.expect(bracket(inner_derivation(e.basis, a), inner_derivation(e.basis, b)) == inner_derivation(e.basis, ab),
               name + ": [D_a, D_b] != D_[a,b]");
    }
    if (der.size() > der.inner_count()) {
      std::uniform_int_distribution<std::size_t> pe(der.inner_count(), der.size() - 1);
      for (int k = 0; k < 6; ++k) {
        const auto& x = der[pe(rng)];
        const auto& y = der[pe(rng)];
        const auto rhs = d_rs(e.basis, *y.arrow, d_rs_apply(e.q, *x.arrow, x.path, y.path)) -
                         d_rs(e.basis, *x.arrow, d_rs_apply(e.q, *y.arrow, y.path, x.path));
        c.expect(bracket(x.op, y.op) == rhs, name + ": edge bracket identity");
      }
    }

    std::vector<LinearOperator> inner;
    for (std::size_t i = 0; i < der.inner_count(); ++i) inner.push_back(der[i].op);
    const auto depth = nilpotency_depth(inner);
    c.expect(depth && *depth <= longest_path_length(*e.q) + 1, name + ": nilpotency bound");
    const Path p = Path::arrow(*e.q, ArrowId{0});
    const auto dp = inner_derivation(e.basis, p);
    c.expect(bracket(d_rs(e.basis, ArrowId{0}, p), dp) == dp, name + ": [D_{p,p}, D_p] != D_p");
  }

  std::size_t agree = 0, true_derivations = 0;
  const std::vector<std::string> names{"a3", "a4", "k2", "k3", "triangle"};
  for (int trial = 0; trial < 100; ++trial) {
    const Embedded e(names[trial % names.size()]);
    const auto der = DerivationBasis::canonical(e.basis);
    std::uniform_int_distribution<int> coeff(-3, 3);
    RationalVector cs(der.size());
    for (auto& x : cs) x = coeff(rng);
    LinearOperator op = der.combine(cs);
    if (trial % 2 == 1) {
      std::uniform_int_distribution<std::size_t> idx(0, e.basis->size() - 1);
      RationalMatrix m = op.matrix();
      const std::size_t i = idx(rng), j = idx(rng);
      m(i, j) += 1;
      op = LinearOperator(e.basis, m);
    }
    const bool leibniz = naive_leibniz(op);
    true_derivations += leibniz;
    agree += leibniz == check_coefficient_conditions(op).empty() && leibniz == is_derivation(op);
  }
  c.expect(agree == 100, "coefficient checker disagrees on " + str(100 - agree) + " of 100 operators");
  c.expect(true_derivations >= 50 && true_derivations < 100, "operator mix is not mixed");
}

void determinism(Criterion& c) {
  const std::vector<std::vector<std::string>> commands{
      {"check"}, {"report"}, {"hh1"}, {"hh1", "--oracle"}, {"derivations"}, {"derivations", "--oracle"}};
  for (const auto& name : all_fixtures())
    for (const auto& cmd : commands) {
      std::vector<std::string> args{cmd[0], fixture_path(name)};
      args.insert(args.end(), cmd.begin() + 1, cmd.end());
      const auto a = run_command(args);
      const auto b = run_command(args);
      c.expect(a.out == b.out && a.err == b.err && a.exit_code == b.exit_code, name + ": " + cmd[0] + " differs");
    }
  for (const auto& name : {"k2", "triangle", "grid2x2"}) {
    const std::vector<std::string> args{"derivations", fixture_path(name), "--verify"};
    c.expect(run_command(args).out == run_command(args).out, std::string(name) + ": derivations --verify differs");
  }
}

}  // namespace

int main() {
  struct Entry {
    const char* title;
    double budget_ms;
    std::function<void(Criterion&)> run;
  };
  const std::vector<Entry> entries{
      {"Kronecker quiver reproduction", 1000, kronecker},
      {"triangle quiver reproduction", 1000, triangle},
      {"rank identities on fixtures", 5000, rank_theorems},
      {"differential Euler formula", 2000, euler},
      {"oracle equivalence", 30000, oracle_equivalence},
      {"property suites", 30000, properties},
      {"deterministic CLI output", 5000, determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    Criterion c;
    const auto start = std::chrono::steady_clock::now();
    try {
      entries[i].run(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    if (ms > entries[i].budget_ms) {
      std::ostringstream s;
      s << "took " << ms << " ms, budget " << entries[i].budget_ms << " ms";
      c.expect(false, s.str());
    }
    const bool ok = c.problems.empty();
    failed += !ok;
    std::printf("%s %zu %s (%.0f ms)\n", ok ? "PASS" : "FAIL", i + 1, entries[i].title, ms);
    for (const auto& p : c.problems) std::printf("    %s\n", p.c_str());
  }
  return failed == 0 ? 0 : 1;
}
