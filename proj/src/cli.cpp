#include "gcm/cli.hpp"
#include "gcm/error.hpp"
#include "gcm/gkaehler.hpp"
#include "gcm/model_file.hpp"

#include <algorithm>
#include <filesystem>
#include <functional>
#include <map>
#include <sstream>

#include "json.hpp"

namespace gcm {

namespace {

using json = nlohmann::ordered_json;

json to_json(const Vec &v) {
  json a = json::array();
  for (const auto &c : v)
    a.push_back(c.str());
  return a;
}

std::string grade_key(int k) { return std::to_string(k); }

class Report {
public:
  Report(std::string command, std::string file)
      : command_(std::move(command)), file_(std::move(file)) {}

  void add(const std::string &name, bool pass, json details = json::object()) {
    checks_.push_back({{"name", name}, {"pass", pass}, {"details", std::move(details)}});
    all_pass_ = all_pass_ && pass;
  }
  void skip(const std::string &name, const std::string &reason) {
    checks_.push_back({{"name", name},
                       {"pass", true},
                       {"details", {{"skipped", true}, {"reason", reason}}}});
  }
  // Runs body; a thrown engine error becomes a failed check.
  void guarded(const std::string &name, const std::function<void()> &body) {
    try {
      body();
    } catch (const Error &e) {
      add(name, false, {{"error", e.what()}});
    }
  }
  void input_error(const std::string &msg) { error_ = msg; }
  bool has_input_error() const { return !error_.empty(); }

  int exit_code() const { return has_input_error() ? 2 : all_pass_ ? 0 : 1; }

  json to_json() const {
    json j;
    j["schema"] = 1;
    j["command"] = command_;
    j["file"] = file_;
    j["status"] = has_input_error() ? "error" : all_pass_ ? "pass" : "fail";
    j["checks"] = checks_;
    j["error"] = error_.empty() ? json(nullptr) : json(error_);
    return j;
  }

  std::string text(bool quiet) const {
    std::ostringstream os;
    os << command_ << " " << file_ << "\n";
    if (has_input_error())
      os << "ERROR " << error_ << "\n";
    for (const auto &c : checks_) {
      bool skipped = c["details"].contains("skipped");
      os << (skipped ? "SKIP " : c["pass"].get<bool>() ? "PASS " : "FAIL ")
         << c["name"].get<std::string>();
      if (!quiet && !c["details"].empty())
        os << "  " << c["details"].dump();
      os << "\n";
    }
    os << "status: " << to_json()["status"].get<std::string>() << "\n";
    return os.str();
  }

private:
  std::string command_, file_;
  json checks_ = json::array();
  bool all_pass_ = true;
  std::string error_;
};

struct Loaded {
  ModelFile mf;
  std::vector<std::pair<std::string, GCSPtr>> structures;  // built, in file order
};

// Adds the model and structure checks every command starts with. Returns
// false when the model itself is unusable.
bool prepare(Report &rep, Loaded &ld, bool record_structures) {
  ValidationReport v = validate_model(*ld.mf.model);
  if (!v.ok) {
    json d = {{"jacobi", v.jacobi_failures},
              {"twist", v.twist_failures},
              {"shape", v.shape_failures}};
    rep.add("model", false, d);
    return false;
  }
  for (const auto &b : ld.mf.structures) {
    try {
      GCSPtr s = build_structure(ld.mf, b);
      ld.structures.emplace_back(b.name, s);
      if (record_structures) {
        json d = {{"kind", to_string(s->kind)}, {"parity", s->parity}};
        if (s->spinor)
          d["spinor"] = s->spinor->str();
        rep.add("structure:" + b.name, true, d);
      }
    } catch (const Error &e) {
      rep.add("structure:" + b.name, false, {{"error", e.what()}});
    }
  }
  return true;
}

GCSPtr resolve(const Loaded &ld, const std::string &name) {
  for (const auto &[n, s] : ld.structures)
    if (n == name)
      return s;
  if (const FamilyBlock *f = ld.mf.find_family(name))
    return f->spec.base();
  return nullptr;
}

json filtration_json(const HodgeFiltration &F) {
  json d = json::object();
  for (const auto &[p, sub] : F.F)
    if (p >= -F.n)
      d["F^" + std::to_string(p)] = {{"dim", sub.dim()}, {"parity", F.parity_of(p)}};
  return d;
}

// ---- commands ----

void cmd_check(Report &rep, Loaded &ld) {
  const LieModel &m = *ld.mf.model;
  rep.add("parse", true, {{"dim", m.dim()}, {"H", m.H().str()}});
  AxiomReport ax = courant_axiom_suite(m, 50, 1);
  json d = {{"samples", ax.samples}, {"C1", ax.c1}, {"C2", ax.c2}, {"C4", ax.c4}, {"C5", ax.c5}};
  if (!ax.first_failure.empty())
    d["witness"] = ax.first_failure;
  rep.add("courant", ax.ok, d);
  if (!prepare(rep, ld, true))
    return;
  for (const auto &fb : ld.mf.families) {
    FamilyValidation v = family_validate(fb.spec);
    rep.add("family:" + fb.name, v.ok, {{"failures", v.failures}});
  }
  for (const auto &g : ld.mf.gks) {
    rep.guarded("gk:" + g.name, [&] {
      GCSPtr a = resolve(ld, g.first), b = resolve(ld, g.second);
      if (!a || !b)
        throw Error(ErrorKind::SyntaxError, "gk pair references a failed structure");
      GKPair p = gk_validate(a, b);
      rep.add("gk:" + g.name, p.projectors_commute && p.dims_ok, {{"pair", {g.first, g.second}}});
    });
  }
}

void cmd_cohomology(Report &rep, Loaded &ld) {
  const ModelPtr &m = ld.mf.model;
  rep.add("de_rham", true, {{"betti", de_rham_betti(*m)}});
  rep.guarded("tangent_algebroid", [&] {
    rep.add("tangent_algebroid", true, {{"betti", algebroid_betti(tangent_algebroid(m->with_twist(Form(m->dim()))))}});
  });
  TwistedCohomology H = twisted_cohomology(m);
  rep.add("twisted", true, {{"even", H.even.dim()}, {"odd", H.odd.dim()}});
  if (!prepare(rep, ld, false))
    return;
  for (const auto &[name, s] : ld.structures) {
    rep.guarded("algebroid:" + name, [&, &s = s, &name = name] {
      rep.add("algebroid:" + name, true, {{"betti", algebroid_betti(s->L())}});
    });
    rep.guarded("delbar:" + name, [&, &s = s, &name = name] {
      std::vector<int> dims = delbar_dims(*s);
      int total = 0;
      for (int d : dims)
        total += d;
      // E_1 can only be larger than the twisted cohomology.
      rep.add("delbar:" + name, total >= H.total(),
              {{"dims", dims}, {"total", total}, {"twisted_total", H.total()}});
    });
  }
}

void cmd_grading(Report &rep, Loaded &ld) {
  if (!prepare(rep, ld, false))
    return;
  for (const auto &[name, s] : ld.structures) {
    GradingReport g = grading_projectors(*s);
    json d = {{"dims", g.dims},           {"resolution", g.resolution}, {"orthogonal", g.orthogonal},
              {"conj_swap", g.conj_swap}, {"lowering", g.lowering},     {"raising", g.raising}};
    if (!g.failure.empty())
      d["failure"] = g.failure;
    rep.add("grading:" + name, g.ok, d);
    std::string witness;
    bool split = delbar_residual_zero(*s, &witness);
    rep.add("d_split:" + name, split, witness.empty() ? json::object() : json{{"witness", witness}});
    rep.guarded("spinor:" + name, [&, &s = s, &name = name] {
      Form rho = extract_pure_spinor(*s);
      rep.add("spinor:" + name, s->grade_of(rho) == -s->n(),
              {{"spinor", rho.str()}, {"parity", s->parity}});
    });
    if (s->kind == StructKind::Symplectic) {
      PsiReport p = measure_psi_constant(*s);
      json pd = {{"constant", p.constant.str()}};
      if (!p.failure.empty())
        pd["failure"] = p.failure;
      rep.add("phi_isomorphism:" + name, p.uniform, pd);
    }
  }
}

void cmd_ddbar(Report &rep, Loaded &ld) {
  if (!prepare(rep, ld, false))
    return;
  for (const auto &[name, s] : ld.structures) {
    FrolicherReport fr = frolicher_pages(*s);
    rep.add("frolicher:" + name, fr.converges,
            {{"e1_total", fr.e1_total},
             {"einf_total", fr.einf_total},
             {"twisted_total", fr.twisted_total},
             {"degenerates_at_e1", fr.degenerates},
             {"stable_page", fr.stable_page}});
    DDbarReport dd = ddbar_check(*s);
    json d = {{"del_side", dd.del_side}, {"delbar_side", dd.delbar_side}};
    if (dd.witness)
      d["witness"] = dd.witness->str();
    if (!dd.witness_note.empty())
      d["note"] = dd.witness_note;
    if (!dd.holds && s->kind == StructKind::Symplectic) {
      LefschetzReport lf = lefschetz_check(*s);
      if (lf.kernel_witness)
        d["lefschetz_witness"] = {{"class", lf.kernel_witness->str()},
                                  {"degree", lf.witness_degree},
                                  {"note", "omega^(n-k) ^ a is exact"}};
    }
    rep.add("ddbar:" + name, dd.holds, d);
  }
}

void cmd_hodge(Report &rep, Loaded &ld) {
  if (!prepare(rep, ld, false))
    return;
  TwistedCohomology H = twisted_cohomology(ld.mf.model);
  for (const auto &[name, s] : ld.structures) {
    HodgeReport hr = hodge_report(*s, H);
    HodgeFiltration F = hodge_filtration(*s, H, hr.ddbar_holds);
    json fd = filtration_json(F);
    rep.add("filtration:" + name, F.nested && F.top_ok,
            {{"dims", fd}, {"even", hr.even}, {"odd", hr.odd}});
    rep.add("hodge_condition:" + name, F.hodge_ok, {{"failing_p", F.failing_p}});
    rep.add("consistency:" + name, hr.consistent,
            {{"ddbar", hr.ddbar_holds},
             {"e1_degenerates", hr.frolicher_degenerates},
             {"hodge", hr.hodge_ok}});
    MukaiReport mk = mukai_Q(*s, H);
    json md = {{"descends", mk.descends},
               {"nondegenerate", mk.nondegenerate},
               {"graded", mk.graded},
               {"form_level", mk.form_level},
               {"differential_sign", mk.sign ? json(*mk.sign) : json("non-uniform")}};
    if (mk.spinor_pairing)
      md["Q(rho,conj rho)"] = mk.spinor_pairing->str();
    rep.add("mukai:" + name, mk.descends && mk.nondegenerate && mk.graded && mk.form_level, md);
  }
}

void cmd_lefschetz(Report &rep, Loaded &ld) {
  if (!prepare(rep, ld, false))
    return;
  for (const auto &[name, s] : ld.structures) {
    if (s->kind != StructKind::Symplectic) {
      rep.skip("lefschetz:" + name, "not of symplectic type");
      continue;
    }
    LefschetzReport lf = lefschetz_check(*s);
    json d = {{"iso", lf.iso}};
    if (lf.kernel_witness) {
      d["witness"] = lf.kernel_witness->str();
      d["witness_degree"] = lf.witness_degree;
    }
    rep.add("lefschetz:" + name, lf.holds, d);
    DDbarReport dd = ddbar_check(*s);
    rep.add("lefschetz_iff_ddbar:" + name, lf.holds == dd.holds,
            {{"lefschetz", lf.holds}, {"ddbar", dd.holds}});
  }
  for (const auto &fb : ld.mf.families) {
    if (fb.spec.kind != FamilyKind::Symplectic)
      continue;
    int n = ld.mf.model->n();
    for (int p = -n; p <= n; p += 2) {
      std::string key = "symplectic_filtration:" + fb.name + ":p=" + grade_key(p);
      rep.guarded(key, [&] {
        SympFiltrationReport r = symp_filtration_check(fb.spec, p);
        if (r.skipped)
          return rep.skip(key, r.reason);
        json dims = json::object();
        for (const auto &[pt, d] : r.dims)
          dims[pt] = d;
        rep.add(key, r.ok, {{"dims", dims}});
      });
    }
  }
}

void cmd_mhs(Report &rep, Loaded &ld) {
  if (!prepare(rep, ld, false))
    return;
  TwistedCohomology H = twisted_cohomology(ld.mf.model);
  for (const auto &[name, s] : ld.structures) {
    if (s->kind != StructKind::Complex) {
      rep.skip("mhs:" + name, "not of complex type");
      continue;
    }
    DDbarReport dd = ddbar_check(*s);
    MHSReport r = weight_mhs_check(*s, H, dd.holds);
    if (r.skipped) {
      rep.skip("mhs:" + name, r.reason);
      continue;
    }
    rep.add("mhs:" + name, r.holds,
            {{"gr_dims", r.gr_dims}, {"jumps", r.jumps}, {"failures", r.failures}});
  }
}

void family_at(Report &rep, const FamilyBlock &fb, const std::string &at) {
  Vec t = parse_point(at, fb.spec.vars);
  std::string key = "at:" + fb.name;
  rep.guarded(key, [&] {
    GCSPtr s = fb.spec.at(t);
    GraphEpsilon g = graph_epsilon(fb.spec, t);
    DDbarReport dd = ddbar_check(*s);
    rep.add(key, g.skew && g.round_trip,
            {{"point", fb.spec.point_str(t)},
             {"kind", to_string(s->kind)},
             {"parity", s->parity},
             {"epsilon", g.cochain.str()},
             {"delbar", delbar_dims(*s)},
             {"ddbar", dd.holds}});
  });
}

void cmd_family(Report &rep, Loaded &ld, const RunOptions &opts) {
  if (!prepare(rep, ld, false))
    return;
  for (const auto &fb : ld.mf.families) {
    const FamilySpec &f = fb.spec;
    const std::string &nm = fb.name;
    if (!opts.at.empty()) {
      family_at(rep, fb, opts.at);
      continue;
    }
    FamilyValidation v = family_validate(f);
    rep.add("validate:" + nm, v.ok, {{"failures", v.failures}});
    if (!v.ok)
      continue;
    GCSPtr s0 = f.base();
    int n = s0->n();
    for (const auto &t : f.samples) {
      std::string key = "graph:" + nm + ":" + f.point_str(t);
      rep.guarded(key, [&] {
        GraphEpsilon g = graph_epsilon(f, t);
        rep.add(key, g.skew && g.round_trip,
                {{"epsilon", g.cochain.str()}, {"skew", g.skew}, {"round_trip", g.round_trip}});
      });
    }
    for (int j = 0; j < f.m(); ++j) {
      std::string dir = f.vars[j];
      std::string key = "kodaira_spencer:" + nm + ":" + dir;
      rep.guarded(key, [&] {
        KSReport ks = ks_class(f, j);
        json d = {{"cochain", ks.cochain.str()}, {"class", to_json(ks.cls)},
                  {"jj_identity", ks.jj_identity}};
        if (s0->kind == StructKind::Symplectic)
          d["pulled_back"] = pullback_cochain(*s0, ks.cochain).str();
        rep.add(key, ks.closed && ks.jj_identity, d);
      });
      std::optional<Scalar> constant;
      json per_p = json::object();
      bool ok = true, skipped = false;
      std::string reason;
      key = "transversality:" + nm + ":" + dir;
      rep.guarded(key, [&] {
        for (int p = -n; p <= n; ++p) {
          TransversalityReport tr = transversality_check(f, p, j, constant);
          if (tr.skipped) {
            skipped = true;
            reason = tr.reason;
            break;
          }
          json d = {{"extended", tr.extended}, {"transversal", tr.transversal},
                    {"components", tr.components}, {"matches", tr.matches}};
          if (!tr.failure.empty())
            d["failure"] = tr.failure;
          per_p[grade_key(p)] = d;
          ok = ok && tr.extended && tr.transversal && tr.components && tr.matches;
        }
        if (skipped)
          return rep.skip(key, reason);
        rep.add(key, ok,
                {{"constant", constant ? json(constant->str()) : json(nullptr)}, {"by_p", per_p}});
      });
    }
    if (f.m() == 2) {
      rep.guarded("holomorphy:" + nm, [&] {
        HolomorphyReport h = holomorphy_check(f);
        rep.add("holomorphy:" + nm, h.holomorphic,
                {{"k1", to_json(h.k1)}, {"k2", to_json(h.k2)}, {"residual", to_json(h.residual)}});
      });
    }
    if (f.kind == FamilyKind::Symplectic) {
      PolyForm s1 = canonical_section(f);
      PolyForm s2 = s1.map_forms([](const Form &a) { return a.conj(); });
      for (int j = 0; j < f.m(); ++j) {
        std::string key = "q_constancy:" + nm + ":" + f.vars[j];
        rep.guarded(key, [&] {
          QConstancyReport q = q_constancy(f, s1, s2, j);
          rep.add(key, q.flat_constant && q.leibniz,
                  {{"flat_constant", q.flat_constant},
                   {"leibniz", q.leibniz},
                   {"derivative", q.derivative.str()},
                   {"predicted", q.predicted.str()}});
        });
      }
    }
    rep.guarded("stability:" + nm, [&] {
      bool base_ok = ddbar_check(*s0).holds;
      if (!base_ok)
        return rep.skip("stability:" + nm, "basepoint fails the ddbar-lemma");
      json bad = json::array();
      for (const auto &t : f.samples)
        if (!ddbar_check(*f.at(t)).holds)
          bad.push_back(f.point_str(t));
      rep.add("stability:" + nm, bad.empty(),
              {{"samples", f.samples.size()}, {"failing", bad}});
    });
  }
}

json gcy_json(const GCYReport &g) {
  json dims = json::array();
  for (const auto &[a, b] : g.dims)
    dims.push_back({a, b});
  json d = {{"spinor_closed", g.spinor_closed},
            {"dims", dims},
            {"iso", g.iso},
            {"injective_h2", g.injective_h2}};
  if (g.period_immersion) {
    d["ks_rank"] = g.ks_rank;
    d["period_rank"] = g.period_rank;
    d["period_immersion"] = *g.period_immersion;
  }
  if (!g.failure.empty())
    d["failure"] = g.failure;
  return d;
}

bool gcy_ok(const GCYReport &g) {
  return g.spinor_closed && g.iso && g.injective_h2 && g.ks_rank == g.period_rank;
}

void cmd_gcy(Report &rep, Loaded &ld) {
  if (!prepare(rep, ld, false))
    return;
  for (const auto &[name, s] : ld.structures) {
    rep.guarded("gcy:" + name, [&, &s = s, &name = name] {
      GCYReport g = gcy_check(*s);
      rep.add("gcy:" + name, gcy_ok(g), gcy_json(g));
    });
  }
  for (const auto &fb : ld.mf.families) {
    rep.guarded("gcy:" + fb.name, [&] {
      GCYReport g = gcy_check(*fb.spec.base(), &fb.spec);
      rep.add("gcy:" + fb.name, gcy_ok(g), gcy_json(g));
    });
  }
}

json bidegree_dims(const std::map<Bidegree, int> &m) {
  json d = json::object();
  for (const auto &[rs, v] : m)
    d["(" + std::to_string(rs.first) + "," + std::to_string(rs.second) + ")"] = v;
  return d;
}

void cmd_gk(Report &rep, Loaded &ld) {
  if (!prepare(rep, ld, false))
    return;
  for (const auto &g : ld.mf.gks) {
    const std::string &nm = g.name;
    GCSPtr a = resolve(ld, g.first), b = resolve(ld, g.second);
    if (!a || !b) {
      rep.add("gk:" + nm, false, {{"error", "pair references a failed structure"}});
      continue;
    }
    std::optional<GKPair> pair;
    rep.guarded("gk:" + nm, [&] {
      pair = gk_validate(a, b);
      std::map<Bidegree, int> dims;
      for (const auto &[rs, range] : pair->blocks)
        dims[rs] = range.second - range.first;
      std::vector<Scalar> minors = leading_minors(pair->G.transpose() * pairing_matrix(a->dim()));
      rep.add("gk:" + nm, pair->projectors_commute && pair->dims_ok,
              {{"bigrading", bidegree_dims(dims)},
               {"metric_minors", to_json(Vec(minors.begin(), minors.end()))}});
    });
    if (!pair)
      continue;
    DeltaSquares sq = delta_squares(*pair);
    json sd = json::object();
    for (const auto &[k, ok] : sq.identities)
      sd[k] = ok;
    rep.add("delta_squares:" + nm, sq.ok, {{"identities", sd}, {"residual_zero", sq.residual_zero}});
    BigradedCohomology bc = bigraded_cohomology(*pair);
    rep.add("bigraded:" + nm,
            bc.total_ok && bc.intersection_ok && bc.marginal_ok && bc.delbar_sums_ok,
            {{"dims", bidegree_dims(bc.delta_dims)},
             {"total", bc.total},
             {"twisted_total", bc.twisted_total},
             {"intersection", bc.intersection_ok},
             {"marginals", bc.marginal_ok},
             {"delbar_sums", bc.delbar_sums_ok},
             {"ddbar1", bc.ddbar1},
             {"ddbar2", bc.ddbar2}});
    std::vector<GenElem> conj_minus;
    for (const auto &e : pair->minus_basis)
      conj_minus.push_back(e.conj());
    rep.guarded("split_L1:" + nm, [&] {
      SplitReport r = algebroid_split_check(ld.mf.model, pair->plus_basis, pair->minus_basis);
      rep.add("split_L1:" + nm, r.ok(),
              {{"no_cross_terms", r.no_cross_terms}, {"square1", r.square1},
               {"square2", r.square2}, {"anticommute", r.anticommute}});
    });
    rep.guarded("split_L2:" + nm, [&] {
      SplitReport r = algebroid_split_check(ld.mf.model, pair->plus_basis, conj_minus);
      rep.add("split_L2:" + nm, r.ok(),
              {{"no_cross_terms", r.no_cross_terms}, {"square1", r.square1},
               {"square2", r.square2}, {"anticommute", r.anticommute}});
    });
    const FamilyBlock *f1 = ld.mf.find_family(g.first);
    const FamilyBlock *f2 = ld.mf.find_family(g.second);
    if (f1 && f2) {
      rep.guarded("deformation:" + nm, [&] {
        GKDeformationReport d = gk_deformation_report(f1->spec, f2->spec);
        rep.add("deformation:" + nm, d.compatible(),
                {{"plus_cochain", d.plus_cochain},
                 {"minus_cochain", d.minus_cochain},
                 {"plus_class", d.plus_class},
                 {"minus_class", d.minus_class},
                 {"plus_residual", to_json(d.plus_residual)},
                 {"minus_residual", to_json(d.minus_residual)}});
      });
    }
  }
}

Report run_report(const std::string &command, const std::string &path, const RunOptions &opts) {
  Report rep(command, std::filesystem::path(path).filename().string());
  const auto &names = command_names();
  if (std::find(names.begin(), names.end(), command) == names.end()) {
    rep.input_error("unknown command '" + command + "'");
    return rep;
  }
  Loaded ld;
  try {
    ld.mf = load_model(path);
  } catch (const Error &e) {
    rep.input_error(e.what());
    return rep;
  }
  try {
    if (command == "check")
      cmd_check(rep, ld);
    else if (command == "cohomology")
      cmd_cohomology(rep, ld);
    else if (command == "grading")
      cmd_grading(rep, ld);
    else if (command == "ddbar")
      cmd_ddbar(rep, ld);
    else if (command == "hodge")
      cmd_hodge(rep, ld);
    else if (command == "lefschetz")
      cmd_lefschetz(rep, ld);
    else if (command == "mhs")
      cmd_mhs(rep, ld);
    else if (command == "family")
      cmd_family(rep, ld, opts);
    else if (command == "gcy")
      cmd_gcy(rep, ld);
    else
      cmd_gk(rep, ld);
  } catch (const Error &e) {
    // Bad --at points are input errors; anything else is a failed check.
    if (e.kind() == ErrorKind::SyntaxError || e.kind() == ErrorKind::UnknownGenerator)
      rep.input_error(e.what());
    else
      rep.add("internal", false, {{"error", e.what()}});
  }
  return rep;
}

} // namespace

const std::vector<std::string> &command_names() {
  static const std::vector<std::string> names = {"check", "cohomology", "grading", "ddbar",
                                                 "hodge", "lefschetz",  "mhs",     "family",
                                                 "gcy",   "gk"};
  return names;
}

RunResult run_command(const std::string &command, const std::string &path,
                      const RunOptions &opts) {
  Report rep = run_report(command, path, opts);
  RunResult r;
  r.exit_code = rep.exit_code();
  r.json = rep.to_json().dump(2) + "\n";
  r.text = opts.json ? r.json : rep.text(opts.quiet);
  return r;
}

RunResult run_all(const std::string &command, const std::string &dir, const RunOptions &opts) {
  namespace fs = std::filesystem;
  std::vector<std::string> files;
  std::error_code ec;
  for (const auto &entry : fs::directory_iterator(dir, ec))
    if (entry.is_regular_file() && entry.path().extension() == ".gcm")
      files.push_back(entry.path().string());
  RunResult out;
  if (ec) {
    Report rep(command, dir);
    rep.input_error("cannot read directory " + dir);
    out.exit_code = 2;
    out.json = rep.to_json().dump(2) + "\n";
    out.text = opts.json ? out.json : rep.text(opts.quiet);
    return out;
  }
  std::sort(files.begin(), files.end());
  json all = json::array();
  std::string text;
  for (const auto &f : files) {
    Report rep = run_report(command, f, opts);
    out.exit_code = std::max(out.exit_code, rep.exit_code());
    all.push_back(rep.to_json());
    text += rep.text(opts.quiet);
  }
  out.json = all.dump(2) + "\n";
  out.text = opts.json ? out.json : text;
  return out;
}

} // namespace gcm
