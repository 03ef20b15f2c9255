#include "quiverhh/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <sstream>

#include "quiverhh/cohomology.hpp"
#include "quiverhh/derivations.hpp"
#include "quiverhh/embedding.hpp"
#include "quiverhh/error.hpp"
#include "quiverhh/quiver_file.hpp"

namespace quiverhh {

namespace {

using nlohmann::json;

struct Options {
  std::string file;
  bool oracle = false;
  bool verify = false;
  bool require_acyclic = false;
  std::optional<std::size_t> outer_face;
  std::size_t max_oracle_paths = 60;
};

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json diagnostic(std::string_view kind, const std::string& message, std::string_view severity = "error") {
  return json{{"kind", kind}, {"message", message}, {"severity", severity}};
}

json matrix_json(const RationalMatrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (const auto& x : m.row(r)) row.push_back(to_string(x));
    rows.push_back(std::move(row));
  }
  return rows;
}

// Nonzero entries keyed by label.
json terms_json(const RationalVector& coeffs, const std::vector<std::string>& labels) {
  json out = json::object();
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    if (!is_zero(coeffs[i])) out[labels[i]] = to_string(coeffs[i]);
  return out;
}

RotationSystem require_rotation(const QuiverFile& file) {
  auto rot = file.rotation();
  if (!rot) throw Error(ErrorKind::InvalidRotation, "file declares no rotation system and it is not unique");
  return *rot;
}

json face_json(const Quiver& q, const FaceCycle& face) {
  json boundary = json::array();
  for (const auto& step : face.boundary)
    boundary.push_back((step.direction == Direction::Forward ? "+" : "-") + q.arrow(step.arrow).name);
  json net = json::object();
  for (std::size_t k = 0; k < face.net.size(); ++k)
    if (face.net[k] != 0) net[q.arrow(ArrowId{k}).name] = face.net[k];
  return json{{"boundary", boundary}, {"net", net}};
}

// ---------------------------------------------------------------------------

int cmd_check(const Options& opt, std::ostream& out, std::ostream& err) {
  json diagnostics = json::array();
  json summary = json::object();
  bool ok = true;
  auto error = [&](const Error& e) {
    diagnostics.push_back(diagnostic(to_string(e.kind()), e.detail()));
    ok = false;
  };

  std::optional<QuiverFile> file;
  try {
    file = load_quiver_file(opt.file);
  } catch (const Error& e) {
    error(e);
  }
  if (file) {
    const Quiver& q = *file->quiver;
    summary["quiver"] = q.name();
    summary["vertices"] = q.vertex_count();
    summary["arrows"] = q.arrow_count();
    const bool acyclic = is_acyclic(q);
    const bool connected = is_connected(q);
    summary["acyclic"] = acyclic;
    summary["connected"] = connected;
    if (!acyclic) {
      const std::string message = "quiver " + q.name() + " has an oriented cycle";
      if (opt.require_acyclic) {
        error(Error(ErrorKind::CyclicQuiver, message));
      } else {
        diagnostics.push_back(diagnostic("CyclicQuiver", message, "warning"));
      }
    }
    if (!connected) error(Error(ErrorKind::Disconnected, "quiver " + q.name() + " is not connected"));
    try {
      auto rot = file->rotation();
      summary["rotation"] = rot.has_value();
      if (rot && connected) {
        const auto faces = trace_faces(q, *rot);
        summary["faces"] = faces.size();
        summary["genus"] = genus(q, faces);
        const std::size_t outer = opt.outer_face.value_or(file->outer.value_or(0));
        if (outer >= faces.size())
          throw Error(ErrorKind::InvalidRotation, "outer face " + std::to_string(outer) + " out of range");
      }
    } catch (const Error& e) {
      summary["rotation"] = false;
      error(e);
    }
  }
  summary["ok"] = ok;
  summary["diagnostics"] = diagnostics;
  out << dump(summary);
  for (const auto& d : diagnostics) err << d.dump() << "\n";
  return ok ? 0 : 2;
}

int cmd_report(const Options& opt, std::ostream& out, std::ostream& err) {
  const QuiverFile file = load_quiver_file(opt.file);
  const Quiver& q = *file.quiver;
  const RotationSystem rot = require_rotation(file);
  const CombinatorialReport r = combinatorial_report(q, rot);
  json faces = json::array();
  for (const auto& f : trace_faces(q, rot)) faces.push_back(face_json(q, f));

  json j;
  j["quiver"] = q.name();
  j["vertexCount"] = r.vertices;
  j["arrowCount"] = r.arrows;
  j["faceCount"] = r.faces;
  j["faces"] = faces;
  j["genus"] = r.genus;
  j["dimDV"] = r.dim_dv;
  j["dimDE"] = r.dim_de;
  j["dimDF"] = r.dim_df;
  j["dimDVplusDF"] = r.dim_dv_plus_df;
  j["quotientDim"] = r.quotient_dim;
  j["Cva"] = matrix_json(r.cva);
  j["Cca"] = matrix_json(r.cca);
  j["Cgamma"] = matrix_json(r.cgamma);
  j["Bgamma"] = matrix_json(r.bgamma);
  j["ranks"] = {{"Cva", r.rank_cva}, {"Cca", r.rank_cca}, {"Cgamma", r.rank_cgamma}, {"Bgamma", r.rank_bgamma}};
  j["eulerHolds"] = r.euler_holds;
  j["verdicts"] = {{"cvaRank", r.cva_rank_ok},       {"ccaRank", r.cca_rank_ok},
                   {"bgammaRank", r.bgamma_rank_ok}, {"disjoint", r.disjoint},
                   {"faceSumZero", r.face_sum_zero}, {"vertexSumZero", r.vertex_sum_zero},
                   {"directSum", r.direct_sum}};
  out << dump(j);
  for (const auto& f : r.failures()) err << diagnostic("InternalMismatch", f).dump() << "\n";
  return r.all_hold() ? 0 : 1;
}

int cmd_hh1(const Options& opt, std::ostream& out, std::ostream& err) {
  const QuiverFile file = load_quiver_file(opt.file);
  const QuiverPtr& q = file.quiver;
  const RotationSystem rot = require_rotation(file);
  const PathBasisPtr paths = PathBasis::create(q);
  const HH1Basis basis = hh1_basis(paths, rot, opt.outer_face ? opt.outer_face : file.outer);
  const HH1Structure structure = hh1_structure(basis);

  std::vector<std::string> der_labels, rep_labels;
  for (const auto& m : basis.derivations.members()) der_labels.push_back(m.label);
  for (const auto& rep : basis.reps) rep_labels.push_back(rep.label);

  json dims = {{"faceFormula", hh1_dimension(*q, rot)}, {"pathCount", path_count_dimension(*q)}};
  if (opt.oracle) {
    const auto oracle = derivation_space_oracle(paths, opt.max_oracle_paths);
    dims["oracle"] = oracle.size() - basis.inner.rows();
  }
  bool agree = true;
  for (const auto& [k, v] : dims.items()) agree = agree && v.get<std::size_t>() == basis.dimension;

  json reps = json::array();
  for (const auto& rep : basis.reps) reps.push_back({{"label", rep.label}, {"terms", terms_json(rep.coords, der_labels)}});

  json brackets = json::array();
  for (std::size_t i = 0; i < basis.reps.size(); ++i)
    for (std::size_t j = i + 1; j < basis.reps.size(); ++j)
      brackets.push_back({{"left", rep_labels[i]},
                          {"right", rep_labels[j]},
                          {"value", terms_json(structure.table[i][j], rep_labels)}});
  json eigen = json::array();
  for (const auto& e : structure.eigenpairs)
    eigen.push_back({{"almostCycle", rep_labels[e.almost_cycle]},
                     {"face", rep_labels[e.face]},
                     {"eigenvalue", to_string(e.eigenvalue)}});

  json j;
  j["quiver"] = q->name();
  j["dim"] = basis.dimension;
  j["dimensions"] = dims;
  j["agree"] = agree;
  j["genus"] = basis.genus;
  j["droppedFace"] = basis.dropped_face;
  j["basis"] = rep_labels;
  j["representatives"] = reps;
  j["structure"] = {{"planar", structure.planar},
                    {"brackets", brackets},
                    {"eigenvalues", eigen},
                    {"facesCommute", structure.faces_commute},
                    {"facesActDiagonally", structure.faces_act_diagonally},
                    {"almostCyclesClosed", structure.almost_cycles_closed}};
  out << dump(j);
  if (!structure.planar)
    err << diagnostic("NonPlanarEmbedding", "genus " + std::to_string(basis.genus) +
                                                " embedding; structure checks are informational",
                      "warning")
               .dump()
        << "\n";
  if (!agree) {
    err << diagnostic("InternalMismatch", "HH1 dimension formulas disagree").dump() << "\n";
    return 1;
  }
  return 0;
}

json verify_json(const DerivationBasis& basis, bool& ok) {
  const PathBasisPtr& paths = basis.path_basis();
  const Quiver& q = paths->quiver();
  json members = json::array();
  bool all_derivations = true, checker_agrees = true;
  for (const auto& m : basis.members()) {
    const bool leibniz = is_derivation(m.op);
    const auto violations = check_coefficient_conditions(m.op);
    all_derivations = all_derivations && leibniz;
    checker_agrees = checker_agrees && (leibniz == violations.empty());
    members.push_back({{"label", m.label}, {"isDerivation", leibniz}, {"violations", violations.size()}});
  }

  std::vector<LinearOperator> inner;
  for (const Path& p : paths->paths()) inner.push_back(inner_derivation(paths, p));
  auto inner_of = [&](const AlgebraElement& a) {
    LinearOperator op(paths);
    for (const auto& [p, c] : a.terms()) op += inner[paths->index_of(p)] * c;
    return op;
  };
  std::vector<std::size_t> nontrivial;
  for (std::size_t i = 0; i < paths->size(); ++i)
    if (!paths->path(i).is_trivial()) nontrivial.push_back(i);

  // [D_p, D_r] = D_{pr - rp}
  std::size_t lie1_checked = 0;
  bool lie1 = true;
  for (std::size_t p : nontrivial)
    for (std::size_t r : nontrivial) {
      const AlgebraElement pe(paths->quiver_ptr(), paths->path(p)), re(paths->quiver_ptr(), paths->path(r));
      lie1 = lie1 && bracket(inner[p], inner[r]) == inner_of(commutator(pe, re));
      ++lie1_checked;
    }

  // [D_p, D_{r,s}] = σ D_{D_{r,s}(p)} with one global σ
  std::size_t lie2_checked = 0;
  std::optional<int> sign;
  bool lie2 = true;
  for (std::size_t p : nontrivial)
    for (std::size_t i = basis.inner_count(); i < basis.size(); ++i) {
      const LinearOperator lhs = bracket(inner[p], basis[i].op);
      const LinearOperator rhs =
          inner_of(d_rs_apply(paths->quiver_ptr(), *basis[i].arrow, basis[i].path, paths->path(p)));
      ++lie2_checked;
      if (lhs.is_zero() && rhs.is_zero()) continue;
      const std::optional<int> s = lhs == rhs ? std::optional(1)
                                   : lhs == rhs * Rational(-1) ? std::optional(-1)
                                                               : std::nullopt;
      if (!s || (sign && *sign != *s)) lie2 = false;
      if (s) sign = *s;
    }

  // [D_{r,s}, D_{p,q}] = D_{p, D_{r,s}(q)} - D_{r, D_{p,q}(s)}
  std::size_t lie3_checked = 0;
  bool lie3 = true;
  for (std::size_t i = basis.inner_count(); i < basis.size(); ++i)
    for (std::size_t j = basis.inner_count(); j < basis.size(); ++j) {
      const ArrowId r = *basis[i].arrow, p = *basis[j].arrow;
      const Path &s = basis[i].path, &qq = basis[j].path;
      const LinearOperator rhs = d_rs(paths, p, d_rs_apply(paths->quiver_ptr(), r, s, qq)) -
                                 d_rs(paths, r, d_rs_apply(paths->quiver_ptr(), p, qq, s));
      lie3 = lie3 && bracket(basis[i].op, basis[j].op) == rhs;
      ++lie3_checked;
    }

  bool non_nilpotent = true;
  for (std::size_t k = 0; k < q.arrow_count(); ++k) {
    const Path p = Path::arrow(q, ArrowId{k});
    const LinearOperator dp = inner_derivation(paths, p);
    non_nilpotent = non_nilpotent && bracket(d_rs(paths, ArrowId{k}, p), dp) == dp;
  }

  std::vector<LinearOperator> ba;
  for (std::size_t i = 0; i < basis.inner_count(); ++i)
    if (!basis[i].path.is_trivial()) ba.push_back(basis[i].op);
  const auto depth = nilpotency_depth(ba);
  const std::size_t longest = longest_path_length(q);
  const bool depth_ok = depth && *depth <= longest + 1;

  ok = all_derivations && checker_agrees && lie1 && lie2 && lie3 && non_nilpotent && depth_ok;
  json lie2_json = {{"checked", lie2_checked}, {"consistent", lie2}};
  lie2_json["observedSign"] = sign ? json(*sign) : json(nullptr);
  return json{{"members", members},
              {"allDerivations", all_derivations},
              {"checkerAgrees", checker_agrees},
              {"lie1", {{"checked", lie1_checked}, {"holds", lie1}}},
              {"lie2", lie2_json},
              {"lie3", {{"checked", lie3_checked}, {"holds", lie3}}},
              {"nonNilpotencyWitness", non_nilpotent},
              {"nilpotency", {{"depth", depth ? json(*depth) : json(nullptr)},
                              {"longestPath", longest},
                              {"withinBound", depth_ok}}}};
}

int cmd_derivations(const Options& opt, std::ostream& out, std::ostream& err) {
  const QuiverFile file = load_quiver_file(opt.file);
  const QuiverPtr& q = file.quiver;
  const PathBasisPtr paths = PathBasis::create(q);
  const DerivationBasis basis = DerivationBasis::canonical(paths);
  const RationalMatrix inner = inner_subspace(basis);

  json labels = json::array(), members = json::array(), path_labels = json::array();
  for (const Path& p : paths->paths()) path_labels.push_back(label(*q, p));
  for (const auto& m : basis.members()) {
    labels.push_back(m.label);
    members.push_back({{"label", m.label}, {"matrix", matrix_json(m.op.matrix())}});
  }
  json j;
  j["quiver"] = q->name();
  j["dim"] = basis.size();
  j["labels"] = labels;
  j["paths"] = path_labels;
  j["members"] = members;
  j["innerRank"] = rank(inner);

  bool ok = true;
  if (opt.oracle) {
    const auto oracle = derivation_space_oracle(paths, opt.max_oracle_paths);
    RationalMatrix stacked(0, paths->size() * paths->size());
    for (const auto& m : basis.members()) stacked.append_row(m.op.flatten());
    const std::size_t canonical_rank = rank(stacked);
    for (const auto& op : oracle) stacked.append_row(op.flatten());
    const bool span_equal = canonical_rank == basis.size() && rank(stacked) == basis.size() &&
                            oracle.size() == basis.size();
    j["oracle"] = {{"dim", oracle.size()}, {"spanEqual", span_equal}};
    ok = ok && span_equal;
  }
  if (opt.verify) {
    bool verified = false;
    j["verify"] = verify_json(basis, verified);
    ok = ok && verified;
  }
  out << dump(j);
  if (!ok) {
    err << diagnostic("InternalMismatch", "derivation checks failed").dump() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace

CommandResult run_command(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  Options opt;
  CLI::App app{"Hochschild cohomology HH1 of path algebras of embedded quivers", "quiverhh"};
  app.require_subcommand(1);

  auto add_file = [&](CLI::App* sub) { sub->add_option("file", opt.file, "quiver file")->required(); };
  auto add_outer = [&](CLI::App* sub) {
    sub->add_option("--outer-face", opt.outer_face, "face dropped from the face derivations");
  };
  auto add_oracle = [&](CLI::App* sub) {
    sub->add_flag("--oracle", opt.oracle, "cross-check against the brute-force derivation space");
    sub->add_option("--max-oracle-paths", opt.max_oracle_paths, "path cap for the oracle")->capture_default_str();
  };

  CLI::App* check = app.add_subcommand("check", "validate a quiver file");
  add_file(check);
  add_outer(check);
  check->add_flag("--require-acyclic", opt.require_acyclic, "treat an oriented cycle as an error");

  CLI::App* report = app.add_subcommand("report", "relation matrices, ranks and Euler verdicts");
  add_file(report);

  CLI::App* hh1 = app.add_subcommand("hh1", "dimension, basis and bracket table of HH1");
  add_file(hh1);
  add_outer(hh1);
  add_oracle(hh1);

  CLI::App* derivations = app.add_subcommand("derivations", "canonical basis of the derivation algebra");
  add_file(derivations);
  add_oracle(derivations);
  derivations->add_flag("--verify", opt.verify, "run the Leibniz, coefficient and bracket checks");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return {code == 0 ? 0 : 2, out.str(), err.str()};
  }

  int code = 0;
  try {
    if (*check) code = cmd_check(opt, out, err);
    else if (*report) code = cmd_report(opt, out, err);
    else if (*hh1) code = cmd_hh1(opt, out, err);
    else code = cmd_derivations(opt, out, err);
  } catch (const Error& e) {
    err << diagnostic(to_string(e.kind()), e.detail()).dump() << "\n";
    return {is_internal(e.kind()) ? 1 : 2, "", err.str()};
  }
  return {code, out.str(), err.str()};
}

}  // namespace quiverhh
