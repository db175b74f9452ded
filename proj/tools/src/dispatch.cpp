#include "shortck_cli/dispatch.hpp"

#include <cmath>
#include <filesystem>
#include <sstream>
#include <stdexcept>

#include "shortck/conjugacy.hpp"
#include "shortck/dimension.hpp"
#include "shortck/io.hpp"
#include "shortck/julia1d.hpp"
#include "shortck/kobayashi.hpp"
#include "shortck/parallel.hpp"
#include "shortck/potential.hpp"
#include "shortck/sampling.hpp"

namespace shortck::cli {

namespace {

using Cx = std::complex<double>;

// Collects artifacts and the manifest of one run.
class Session {
 public:
  explicit Session(const RunConfig& cfg) : cfg_(cfg), dir_(cfg.text("run", "output")), name_(cfg.text("run", "name")) {
    for (const auto& [k, v] : cfg.values()) {
      if (k == "run.output" || k == "run.threads") continue;
      const auto dot = k.find('.');
      core_.set("config." + k.substr(0, dot), k.substr(dot + 1), value_text(v));
    }
  }

  Manifest& core() { return core_; }
  Manifest& results() { return results_; }
  std::string comment() const { return "shortck " + cfg_.text("run", "command") + " manifest " + hex64(core_.hash()); }

  void write(const std::string& suffix, const std::string& bytes) {
    const std::string file = name_ + "_" + suffix;
    std::filesystem::create_directories(dir_);
    write_file((std::filesystem::path(dir_) / file).string(), bytes);
    outcome_.artifacts.push_back({file, fnv1a64(bytes)});
  }

  void note(const std::string& line) { outcome_.summary += line + "\n"; }
  void fail(const std::string& line) {
    note("FAIL " + line);
    outcome_.status = kDomainFailure;
  }

  RunOutcome finish() {
    Manifest m = core_;
    m.set("run", "core_hash", hex64(core_.hash()));
    m.merge(results_);
    for (const auto& a : outcome_.artifacts) m.set("artifacts", a.file, hex64(a.hash));
    m.set("run", "status", static_cast<std::size_t>(outcome_.status));
    write("manifest.txt", m.text());
    return std::move(outcome_);
  }

 private:
  const RunConfig& cfg_;
  std::string dir_;
  std::string name_;
  Manifest core_;
  Manifest results_;
  RunOutcome outcome_;
};

Family family_of(const std::string& s) {
  if (s == "shiftlike") return Family::ShiftLike;
  if (s == "henon") return Family::HenonLike;
  if (s == "rosayrudin") return Family::RosayRudin;
  if (s == "diaglinear") return Family::DiagLinear;
  throw std::invalid_argument("unknown family " + s);
}

Poly1 julia_poly(const RunConfig& cfg) {
  const auto& c = cfg.list("julia", "p");
  return Poly1(std::vector<Cx>(c.begin(), c.end()));
}

CPoint point_from(const std::vector<double>& v, std::size_t k, const char* what) {
  if (v.size() != 2 * k)
    throw ConfigError(0, std::string("kobayashi.") + what + " needs " + std::to_string(2 * k) + " reals (re,im pairs)");
  CPoint p(k);
  for (std::size_t i = 0; i < k; ++i) p[i] = ExtComplex::from_native(Cx(v[2 * i], v[2 * i + 1]));
  return p;
}

std::string csv_row(std::initializer_list<std::string> cells) {
  std::string s;
  for (const auto& c : cells) {
    if (!s.empty()) s += ',';
    s += c;
  }
  return s + "\n";
}

std::string num(double x) { return format_double(x); }
std::string num(std::size_t x) { return std::to_string(x); }

void cmd_render(const RunConfig& cfg, Session& s) {
  const SequenceSpec spec = sequence_spec(cfg);
  const MapSequence seq = spec.build();
  const BasinParams bp = basin_params(cfg, seq);
  const SliceWindow w = slice_window(cfg, seq.dimension());
  spec.describe(s.core(), "sequence");
  describe(s.core(), "basin", bp);
  describe(s.core(), "slice", w);

  const FateGrid g = render_slice(seq, w, bp);
  const GridSet b = boundary_pixels(g);
  s.write("render.pgm", fate_pgm(g, s.comment()));
  s.write("boundary.pbm", pbm_bytes(b, s.comment()));
  s.results().set("results", "attracted", g.count(FateTag::Attracted));
  s.results().set("results", "escaped", g.count(FateTag::Escaped));
  s.results().set("results", "undecided", g.count(FateTag::Undecided));
  s.results().set("results", "boundary", b.count());
  s.note("attracted " + num(g.count(FateTag::Attracted)) + " escaped " + num(g.count(FateTag::Escaped)) +
         " undecided " + num(g.count(FateTag::Undecided)));
}

void cmd_potential(const RunConfig& cfg, Session& s) {
  const SequenceSpec spec = sequence_spec(cfg);
  if (spec.family != Family::ShiftLike) throw std::invalid_argument("potential-table needs the shiftlike family");
  const MapSequence seq = spec.build();
  const BasinParams bp = basin_params(cfg, seq);
  const PotentialParams pp = potential_params(PolySpec(spec.P), bp.c);
  spec.describe(s.core(), "sequence");
  describe(s.core(), "basin", bp);

  const double lo = cfg.real("potential", "x_lo"), hi = cfg.real("potential", "x_hi");
  const std::size_t count = cfg.count("potential", "count");
  if (!(lo > 0.0 && lo < hi && hi <= 1.0) || count < 2)
    throw std::invalid_argument("potential: need 0 < x_lo < x_hi <= 1 and count >= 2");
  std::vector<double> xs(count);
  for (std::size_t i = 0; i < count; ++i)
    xs[i] = pp.c * lo * std::pow(hi / lo, static_cast<double>(i) / static_cast<double>(count - 1));

  const auto rows = positive_real_table(seq, pp, cfg.real("potential", "y"), xs, cfg.count("potential", "n_max"),
                                        cfg.real("potential", "tol"));
  s.write("potential.csv", real_slice_csv(rows));
  std::size_t unconverged = 0, bracket = 0;
  for (const auto& r : rows) {
    unconverged += !r.converged;
    bracket += !(r.psi >= r.lower_bound - 1e-6 && r.psi < 0.0);
  }
  s.results().set("results", "unconverged", unconverged);
  s.results().set("results", "outside_bracket", bracket);
  if (unconverged) s.fail(num(unconverged) + " rows did not converge");
  if (bracket) s.fail(num(bracket) + " rows outside the lower bound / negativity bracket");
  if (!unconverged && !bracket) s.note("PASS " + num(rows.size()) + " rows converged inside the bracket");
}

GridSet julia_raster(const RunConfig& cfg, const Poly1& p) {
  const std::size_t res = cfg.count("julia", "res");
  return julia_grid(p, default_julia_rect(p), res, res, cfg.count("julia", "iters"));
}

void cmd_boxdim(const RunConfig& cfg, Session& s) {
  GridSet set;
  if (cfg.text("boxdim", "source") == "julia") {
    const Poly1 p = julia_poly(cfg);
    s.core().set("julia", "p", p.to_string());
    set = julia_raster(cfg, p);
  } else {
    const SequenceSpec spec = sequence_spec(cfg);
    const MapSequence seq = spec.build();
    const BasinParams bp = basin_params(cfg, seq);
    const SliceWindow w = slice_window(cfg, seq.dimension());
    spec.describe(s.core(), "sequence");
    describe(s.core(), "basin", bp);
    describe(s.core(), "slice", w);
    set = boundary_pixels(render_slice(seq, w, bp));
  }
  if (set.empty()) {
    s.fail("empty set, no dimension estimate");
    return;
  }
  const double hi = cfg.real("boxdim", "eps_hi"), lo = cfg.real("boxdim", "eps_lo");
  const std::vector<double> eps =
      hi > 0.0 && lo > 0.0 ? geometric_eps(hi, lo, cfg.count("boxdim", "eps_count")) : default_eps_schedule(set);
  const DimEstimate d = boxdim_estimate(set, eps);
  s.write("boxdim.csv", boxdim_csv(d));
  s.write("set.pbm", pbm_bytes(set, s.comment()));
  s.results().set("results", "slope", d.slope);
  s.results().set("results", "r2", d.r2);
  s.results().set("results", "degenerate", d.degenerate);
  // Reported only: a raster estimate cannot settle whether the dimension exceeds 1.
  const double theta = cfg.real("boxdim", "theta");
  const bool above = d.slope > 1.0 + theta;
  s.results().set("results", "above_one_by_theta", above);
  s.note("box dimension " + num(d.slope) + " r2 " + num(d.r2) + (above ? ", above 1 + " : ", not above 1 + ") +
         num(theta));
}

void cmd_julia(const RunConfig& cfg, Session& s) {
  const Poly1 p = julia_poly(cfg);
  s.core().set("julia", "p", p.to_string());
  s.core().set("julia", "rect_half_width", 0.5 * default_julia_rect(p).width);
  const GridSet j = julia_raster(cfg, p);
  const auto probe = hyperbolicity_probe(p, cfg.count("julia", "iters"), p.escape_radius());
  s.write("julia.pbm", pbm_bytes(j, s.comment()));
  std::string csv = "point_re,point_im,fate,steps\n";
  for (const auto& c : probe.critical)
    csv += csv_row({num(c.point.real()), num(c.point.imag()), c.fate, num(c.steps)});
  s.write("critical.csv", csv);
  s.results().set("results", "julia_pixels", j.count());
  s.results().set("results", "diameter", diameter(j));
  s.results().set("results", "probe", verdict_name(probe.verdict));
  if (!probe.note.empty()) s.results().set("results", "probe_note", probe.note);
  if (probe.verdict == ProbeVerdict::Fail) s.fail("hyperbolicity probe: " + probe.note);
  else s.note(std::string("probe ") + verdict_name(probe.verdict) + " " + probe.note);
}

void cmd_nested(const RunConfig& cfg, Session& s) {
  const Poly1 p = julia_poly(cfg);
  const std::size_t res = cfg.count("julia", "res");
  const Rect rect = default_julia_rect(p);
  double d0 = cfg.real("julia", "delta0");
  if (d0 <= 0.0) d0 = default_delta0(julia_grid(p, rect, res, res, cfg.count("julia", "iters")));
  s.core().set("julia", "p", p.to_string());
  s.core().set("julia", "delta0", d0);

  const NestedSequence ns = nested_sequence(p, d0, cfg.count("julia", "nested_max"), rect, res, res,
                                            cfg.count("julia", "iters"));
  std::string csv = "n,delta,eta,cprime,diam,C_pixels,D_pixels\n";
  for (const auto& st : ns.steps)
    csv += csv_row({num(st.n), num(st.delta), num(st.eta), num(st.cprime), num(st.diam), num(st.C.count()),
                    num(st.D.count())});
  s.write("nested.csv", csv);
  s.write("C0.pbm", pbm_bytes(ns.steps.front().C, s.comment()));
  s.write("D0.pbm", pbm_bytes(ns.steps.front().D, s.comment()));
  s.results().set("results", "steps", ns.steps.size());
  s.results().set("results", "truncated", ns.truncated);
  if (!ns.diagnostic.empty()) s.results().set("results", "diagnostic", ns.diagnostic);
  s.note(num(ns.steps.size()) + " nested steps" + (ns.truncated ? " (truncated: " + ns.diagnostic + ")" : ""));
}

Bump bump_of(const std::string& b) {
  if (b == "linear_z1_e1") return Bump::LinearZ1E1;
  if (b == "square_z2_e1") return Bump::SquareZ2E1;
  return Bump::SquareZ1E2;
}

void cmd_conjugacy(const RunConfig& cfg, Session& s) {
  const SequenceSpec spec = sequence_spec(cfg);
  const MapSequence S = spec.build();
  const std::size_t k = S.dimension();
  const std::size_t n_max = cfg.count("conjugacy", "n_max");
  const std::size_t samples = std::max<std::size_t>(8, cfg.count("conjugacy", "samples"));
  const auto seed = static_cast<std::uint64_t>(cfg.integer("run", "seed"));
  spec.describe(s.core(), "sequence");

  UUBOptions uo;
  uo.n_max = n_max;
  uo.seed = mix_seed(seed, 1);
  const UUBResult uub = verify_uub(S, cfg.real("conjugacy", "r"), cfg.real("conjugacy", "C"), uo);
  if (!uub.ok()) {
    s.fail("uniform upper bound violated at n = " + num(uub.violation->n) + ", ratio " + num(uub.violation->ratio));
    return;
  }
  const UUBWitness& w = *uub.witness;
  s.results().set("witness", "r0", w.r0);
  s.results().set("witness", "eps", w.eps);
  s.results().set("witness", "delta", w.delta);
  s.results().set("witness", "Ctilde", w.Ctilde);

  ScheduleOptions so;
  so.seed = mix_seed(seed, 2);
  const ToleranceSchedule sched = tolerance_schedule(w, S, n_max, so);
  const std::string bump = cfg.text("conjugacy", "bump");
  const MapSequence F = bump == "none" ? S : perturbed(S, sched, bump_of(bump), cfg.real("conjugacy", "factor"));

  const auto cloud = ball_cloud(k, w.r, 3, samples / 8, samples, mix_seed(seed, 3));
  const PerturbationReport pr = check_perturbation(S, F, sched, cloud);
  std::string pcsv = "n,sup_diff,delta_n,pass\n";
  for (const auto& r : pr.rows) pcsv += csv_row({num(r.n), num(r.sup_diff), num(r.delta_n), r.pass ? "1" : "0"});
  s.write("schedule.csv", schedule_csv(sched));
  s.write("perturbation.csv", pcsv);
  s.results().set("results", "perturbation", pr.passed() ? "PASS" : "FAIL");
  if (!pr.passed()) {
    std::size_t bad = 0;
    for (const auto& r : pr.rows) bad += !r.pass;
    s.fail("perturbation exceeds delta_n on " + num(bad) + " of " + num(pr.rows.size()) + " steps");
    return;
  }

  const auto K = ball_cloud(k, w.r0, 2, samples / 8, samples / 2, mix_seed(seed, 4));
  const ConjugacyProfile prof = conjugacy_profile(S, F, sched, K, n_max);
  const ContainmentReport cont = containment_check(F, w, n_max, samples, mix_seed(seed, 5));
  s.write("profile.csv", profile_csv(prof));
  s.results().set("results", "certificate", prof.certificate ? "PASS" : "FAIL");
  s.results().set("results", "worst_certificate_ratio", prof.worst_certificate_ratio);
  s.results().set("results", "containment", cont.passed() ? "PASS" : "FAIL");
  s.results().set("results", "containment_worst_ratio", cont.worst_ratio);
  if (!prof.certificate) s.fail("Cauchy certificate, worst ratio " + num(prof.worst_certificate_ratio));
  if (!cont.passed())
    s.fail("containment: " + num(cont.violations) + " violations, " + num(cont.ball_escapes) + " ball escapes");
  if (prof.certificate && cont.passed())
    s.note("PASS certificate (worst ratio " + num(prof.worst_certificate_ratio) + ") and containment");
}

void cmd_kobayashi(const RunConfig& cfg, Session& s) {
  const SequenceSpec spec = sequence_spec(cfg);
  const MapSequence seq = spec.build();
  const std::size_t k = seq.dimension();
  DiscParams dp;
  dp.basin = basin_params(cfg, seq);
  dp.m = cfg.count("kobayashi", "m");
  dp.n_max = cfg.count("kobayashi", "n_max");
  const CPoint p = point_from(cfg.list("kobayashi", "p"), k, "p");
  CPoint xi = point_from(cfg.list("kobayashi", "xi"), k, "xi");
  const double norm = xi.norm().to_native();
  if (!(norm > 0.0)) throw ConfigError(0, "kobayashi.xi must be non-zero");
  xi = ExtComplex::from_native(1.0 / norm) * xi;
  spec.describe(s.core(), "sequence");
  describe(s.core(), "basin", dp.basin);

  const DiscWitness dw = disc_witness(seq, p, xi, cfg.real("kobayashi", "R"), dp);
  std::string csv = "R,admissible,n,roundtrip_error,derivative_error,central_error,samples,violations,forward_mismatch\n";
  csv += csv_row({num(dw.R), dw.admissible ? "1" : "0", num(dw.n), num(dw.roundtrip_error), num(dw.derivative_error),
                  num(dw.central_error), num(dw.samples), num(dw.containment_violations), num(dw.forward_mismatch)});
  s.write("kobayashi.csv", csv);
  std::string trace = "j,log_xi_norm,log_required\n";
  for (std::size_t j = 0; j < dw.log_xi_norm.size(); ++j)
    trace += csv_row({num(j), num(dw.log_xi_norm[j]), j < dw.log_required.size() ? num(dw.log_required[j]) : ""});
  s.write("decay.csv", trace);
  s.results().set("results", "admissible", dw.admissible);
  s.results().set("results", "n", dw.n);
  s.results().set("results", "derivative_error", dw.derivative_error);
  s.results().set("results", "violations", dw.containment_violations);
  if (!dw.admissible) {
    s.fail("no admissible n: " + dw.diagnostic);
    return;
  }
  if (dw.containment_violations) s.fail(num(dw.containment_violations) + " disc samples outside the basin");
  else s.note("disc at n = " + num(dw.n) + ", derivative error " + num(dw.derivative_error));
}

void cmd_jplus(const RunConfig& cfg, Session& s) {
  const Poly1 p = julia_poly(cfg);
  TubeSpec tube;
  tube.C = cfg.real("tube", "C");
  tube.delta = cfg.real("tube", "delta");
  tube.R = cfg.real("tube", "R");
  CouplingOptions co;
  co.k = cfg.count("sequence", "k");
  co.res = cfg.count("julia", "res");
  co.julia_iters = cfg.count("julia", "iters");
  co.nested_max = cfg.count("julia", "nested_max");
  co.n_max = cfg.count("julia", "nested_max");
  const CoupledScenario cs = build_coupled_scenario(p, tube, co);
  s.core().merge(cs.manifest());

  const auto seed = static_cast<std::uint64_t>(cfg.integer("run", "seed"));
  const std::size_t n_side = cfg.count("tube", "subsample") * 2;
  std::size_t compact_ok = 0, unbounded_ok = 0;
  const auto compact = tube_samples(cs, TubeSide::Compact, n_side, mix_seed(seed, 1));
  const auto unbounded = tube_samples(cs, TubeSide::Unbounded, n_side, mix_seed(seed, 2));
  for (const auto& z : compact) compact_ok += classify_point(cs.seq, z, cs.params).tag == FateTag::Attracted;
  for (const auto& z : unbounded) unbounded_ok += classify_point(cs.seq, z, cs.params).tag == FateTag::Escaped;

  JPlusOptions jo;
  jo.z2_frac = cfg.real("tube", "z2_frac");
  jo.subsample = cfg.count("tube", "subsample");
  jo.witness_budget = cfg.count("tube", "budget");
  jo.seed = mix_seed(seed, 3);
  const JPlusReport r = measure_jplus(cs, jo);
  s.write("jplus.pgm", fate_pgm(r.grid, s.comment()));
  s.write("jplus_boundary.pbm", pbm_bytes(r.boundary, s.comment()));
  if (!r.too_few) s.write("boxdim.csv", boxdim_csv(r.dim));

  auto& m = s.results();
  m.set("results", "compact_attracted", compact_ok);
  m.set("results", "compact_samples", compact.size());
  m.set("results", "unbounded_escaped", unbounded_ok);
  m.set("results", "unbounded_samples", unbounded.size());
  m.set("results", "boundary", r.boundary_count);
  m.set("results", "distance_to_u", r.distance_to_u);
  m.set("results", "tube_bound", r.tube_bound);
  m.set("results", "witness_rate", r.witness_rate);
  if (!r.too_few) m.set("results", "boxdim", r.dim.slope);

  if (compact_ok != compact.size()) s.fail("compact side: " + num(compact_ok) + "/" + num(compact.size()) + " attracted");
  if (unbounded_ok != unbounded.size())
    s.fail("unbounded side: " + num(unbounded_ok) + "/" + num(unbounded.size()) + " escaped");
  if (r.too_few) s.fail("too few boundary pixels (" + num(r.boundary_count) + ")");
  else if (!r.within_tube) s.fail("boundary leaves the tube: distance " + num(r.distance_to_u));
  s.note("witness rate " + num(r.witness_rate) + " over " + num(r.witness_tried) + " boundary points");
}

void cmd_gen_sequence(const RunConfig& cfg, Session& s) {
  const SequenceSpec spec = sequence_spec(cfg);
  if (spec.family != Family::ShiftLike && spec.family != Family::HenonLike)
    throw std::invalid_argument("gen-sequence needs the shiftlike or henon family");
  const std::size_t n = cfg.count("sequence", "n");
  if (n == 0) throw ConfigError(0, "sequence.n must be positive");
  spec.describe(s.core(), "sequence");
  const SequenceReport rep = validate_sequence(spec.coeffs(), n - 1);
  std::string csv = "n,log_a,below_one,below_square,root_log\n";
  for (const auto& r : rep.rows)
    csv += csv_row({num(r.n), num(r.log_a), r.below_one ? "1" : "0", r.below_square ? "1" : "0", num(r.root_log)});
  s.write("sequence.csv", csv);
  s.results().set("results", "decay_ok", rep.decay_ok);
  s.results().set("results", "root_decay_ok", rep.root_decay_ok);
  if (!rep.passed()) s.fail(rep.summary());
  else s.note(num(rep.rows.size()) + " terms pass both coefficient conditions");
}

}  // namespace

SequenceSpec sequence_spec(const RunConfig& cfg) {
  SequenceSpec spec;
  spec.family = family_of(cfg.text("sequence", "family"));
  spec.k = cfg.count("sequence", "k");
  spec.P = cfg.list("sequence", "P");
  spec.K = cfg.real("sequence", "K");
  spec.g = cfg.real("sequence", "g");
  spec.log_a = cfg.list("sequence", "log_a");
  spec.alpha = cfg.real("sequence", "alpha");
  spec.center_index = static_cast<long>(cfg.integer("sequence", "center_index"));
  return spec;
}

BasinParams basin_params(const RunConfig& cfg, const MapSequence& seq) {
  BasinParams bp = default_basin_params(seq);
  const double c = cfg.real("basin", "c");
  if (c < 0.0 || c >= 1.0) throw ConfigError(0, "basin.c must lie in [0, 1)");
  if (c > 0.0) {
    bp.c = c;
    const auto& q = seq.quadratic_factor();
    const auto& a = seq.coefficients();
    if (q && a) {
      bp.M = q->abs_bound(c);
      if (!(bp.M * c < 1.0)) throw std::invalid_argument("basin.c: need M c < 1");
      bp.c_next = 0.5 * (1.0 + bp.M * c);
      bp.n0 = first_nesting_index(*a, bp.M, bp.c, bp.c_next, 64);
    }
  }
  const double r = cfg.real("basin", "r_escape");
  if (r < 0.0) throw ConfigError(0, "basin.r_escape must be non-negative");
  if (r > 0.0) bp.r_escape = r;
  bp.n_max = cfg.count("basin", "n_max");
  return bp;
}

SliceWindow slice_window(const RunConfig& cfg, std::size_t k) {
  const Cx center(cfg.real("window", "center_re"), cfg.real("window", "center_im"));
  const double wd = cfg.real("window", "width"), ht = cfg.real("window", "height");
  const std::size_t nx = cfg.count("window", "nx"), ny = cfg.count("window", "ny");
  const double z2 = cfg.real("window", "z2");
  SliceWindow w;
  if (cfg.text("window", "slice") == "z1_plane") {
    w = z1_plane(k, center, wd, ht, nx, ny, z2);
  } else {
    w.base = CPoint(k);
    w.base[0] = ExtComplex::from_native(center.real());
    w.base[1] = ExtComplex::from_native(center.imag());
    w.u = CPoint(k);
    w.u[0] = ExtComplex::from_native(1.0);
    w.v = CPoint(k);
    w.v[1] = ExtComplex::from_native(1.0);
    w.width = wd;
    w.height = ht;
    w.nx = nx;
    w.ny = ny;
  }
  w.validate();
  return w;
}

RunOutcome run(const RunConfig& cfg) {
  set_thread_count(cfg.count("run", "threads"));
  Session s(cfg);
  const std::string& cmd = cfg.text("run", "command");
  if (cmd == "render") cmd_render(cfg, s);
  else if (cmd == "potential-table") cmd_potential(cfg, s);
  else if (cmd == "boxdim") cmd_boxdim(cfg, s);
  else if (cmd == "julia") cmd_julia(cfg, s);
  else if (cmd == "nested") cmd_nested(cfg, s);
  else if (cmd == "conjugacy-check") cmd_conjugacy(cfg, s);
  else if (cmd == "kobayashi") cmd_kobayashi(cfg, s);
  else if (cmd == "jplus-measure") cmd_jplus(cfg, s);
  else if (cmd == "gen-sequence") cmd_gen_sequence(cfg, s);
  else throw ConfigError(0, "run.command is required");
  return s.finish();
}

int dispatch(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    const RunOutcome o = run(cfg);
    out << o.summary;
    for (const auto& a : o.artifacts) out << a.file << " " << hex64(a.hash) << "\n";
    return o.status;
  } catch (const ConfigError& e) {
    err << "shortck: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::invalid_argument& e) {
    err << "shortck: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    err << "shortck: " << e.what() << "\n";
    return kDomainFailure;
  }
}

}  // namespace shortck::cli
