#include "commands.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>

#include "equispectra/builtins.hpp"
#include "equispectra/error.hpp"
#include "equispectra/lp.hpp"
#include "equispectra/polar.hpp"
#include "golden.hpp"

namespace equispectra::cli {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::string json_vector(const Eigen::VectorXd& v) {
  return Json(std::vector<double>(v.data(), v.data() + v.size())).dump();
}

Json json_row(const Eigen::RowVectorXd& v) { return Json(std::vector<double>(v.data(), v.data() + v.size())); }

std::string rational_list(const RationalVector& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + to_string(v[i]);
  return out + ")";
}

struct PencilSource {
  AffinePencil pencil;
  std::optional<RationalVector> shift;
  std::optional<std::vector<Polynomial>> basis;
};

AffinePencil pencil_from_strings(const Json& rows, const std::vector<std::string>& vars) {
  PolynomialMatrix m(rows.size(), rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = parse_polynomial(rows[i][j].get<std::string>(), vars);
  return AffinePencil::from_polynomials(m, vars);
}

PencilSource pencil_source(const std::string& source) {
  namespace fs = std::filesystem;
  if (fs::is_regular_file(source)) {
    Json doc = read_document(source);
    const Json& body = doc.is_object() && doc.contains("Mbar_pencil") ? doc["Mbar_pencil"] : doc;
    return {pencil_from_json(body), {}, {}};
  }
  if (source == "disk" || source == "quartic") return {builtins::pencil_by_name(source), {}, {}};
  if (source == "hermitian")
    return {builtins::hermitian_pencil(), builtins::hermitian_shift(), builtins::hermitian_basis()};
  if (source == "disk-mbar" || source == "hermitian-mbar") {
    const Json& g = golden(source.substr(0, source.find('-')));
    return {pencil_from_strings(g["Mbar"], g["variables"].get<std::vector<std::string>>()), {}, {}};
  }
  throw ParseError("'" + source + "' is neither a readable file nor a builtin pencil");
}

void write_output(const GlobalOptions& opts, RunReport& report, const std::string& name, const Json& doc) {
  if (opts.out.empty()) {
    report.details[name] = doc;
    return;
  }
  namespace fs = std::filesystem;
  fs::create_directories(opts.out);
  const fs::path path = fs::path(opts.out) / (name + ".json");
  std::ofstream f(path, std::ios::binary);
  f << dump_document(doc);
  if (!f) throw ParseError("cannot write '" + path.string() + "'");
  report.outputs.push_back(path.string());
}

int finish(const RunReport& report, std::ostream& out, int code) {
  Json j = report.to_json();
  j["exit_code"] = code;
  out << j.dump(2) << "\n";
  return code;
}

/// Runs `body`, mapping the error taxonomy onto exit codes.
int guarded(RunReport& report, std::ostream& out, std::ostream& err, const std::function<int()>& body) {
  try {
    return finish(report, out, body());
  } catch (const StageError& e) {
    err << "stage '" << e.stage() << "' failed: " << e.what() << "\n";
    report.add(e.stage(), false, e.what());
    return finish(report, out, kCheckFailure);
  } catch (const ParseError& e) {
    err << "input error: " << e.what() << "\n";
    report.details["error"] = e.what();
    if (e.line() > 0) report.details["error_location"] = {{"line", e.line()}, {"column", e.column()}};
    return finish(report, out, kInputError);
  } catch (const DomainError& e) {
    err << "input error: " << e.what() << "\n";
    report.details["error"] = e.what();
    return finish(report, out, kInputError);
  }
}

EquivariantizeResult equivariantize_source(const PencilSource& src, const GroupSpec& g, const GlobalOptions& opts,
                                           const EquivariantizeArgs* args) {
  EquivariantizeOptions o;
  o.samples = opts.samples;
  o.seed = opts.seed;
  if (opts.tol) o.tol = *opts.tol;
  o.shift = src.shift;
  o.preferred_basis = src.basis;
  if (args && !args->shift.empty()) o.shift = parse_rational_list(args->shift);
  if (args && !args->basis.empty()) {
    std::vector<Polynomial> basis;
    std::stringstream ss(args->basis);
    for (std::string item; std::getline(ss, item, ';');) basis.push_back(parse_polynomial(item, src.pencil.variables()));
    o.preferred_basis = std::move(basis);
  }
  return equivariantize(src.pencil, g, o);
}

/// Runs one worked example; returns whether it matched its golden document.
bool run_example(const std::string& name, const GlobalOptions& opts, RunReport& report) {
  const Json& gold = golden(name);
  if (name == "quartic") {
    const double tol = opts.tol.value_or(1e-8);
    builtins::QuarticVerification q = builtins::verify_quartic(opts.samples, tol, opts.seed);
    Json produced = Json::object();
    produced["variables"] = builtins::quartic_equivariant_pencil().variables();
    Json center = Json::array();
    for (const auto& c : builtins::quartic_center()) center.push_back(to_string(c));
    produced["center"] = std::move(center);
    produced["Mbar_rational"] = pencil_matrix_to_json(builtins::quartic_equivariant_pencil());
    produced["congruence"] = rational_matrix_to_json(builtins::quartic_congruence());
    Json diff = Json::diff(gold, produced);
    report.add("quartic.golden", diff.empty(), diff.empty() ? "" : diff.dump());
    report.add("quartic.congruence", q.congruence_exact);
    report.add("quartic.equivariance", q.equivariance.ok, q.equivariance.failure);
    report.add("quartic.set_rational", q.rational_set.ok(),
               std::to_string(q.rational_set.agree) + "/" + std::to_string(q.rational_set.total));
    report.add("quartic.set_published", q.published_set.ok(),
               std::to_string(q.published_set.agree) + "/" + std::to_string(q.published_set.total));
    produced["verification"] = {{"congruence_exact", q.congruence_exact},
                                {"equivariance", q.equivariance.ok},
                                {"set_rational", std::to_string(q.rational_set.agree) + "/" +
                                                     std::to_string(q.rational_set.total)},
                                {"set_published", std::to_string(q.published_set.agree) + "/" +
                                                      std::to_string(q.published_set.total)}};
    write_output(opts, report, "quartic", produced);
    return diff.empty() && q.ok();
  }
  const std::string group = name == "disk" ? "disk-so2" : "hermitian-su2";
  GroupSpec g = GroupSpec::builtin(group);
  const auto start = Clock::now();
  EquivariantizeResult r = equivariantize_source(pencil_source(name), g, opts, nullptr);
  const double ms = elapsed_ms(start);
  for (const auto& t : r.timings) report.timings.push_back({name + "." + t.stage, t.milliseconds});
  Json doc = equivariant_to_json(r, g);
  Json diff = Json::diff(gold, golden_view(doc));
  report.add(name + ".golden", diff.empty(), diff.empty() ? "" : diff.dump());
  report.add(name + ".certificate", r.all_passed());
  report.details[name + "_runtime_ms"] = ms;
  write_output(opts, report, name, doc);
  return diff.empty() && r.all_passed();
}

std::vector<Eigen::VectorXd> conjugate_hull(const Eigen::VectorXd& lam, std::size_t conjugates, std::mt19937_64& rng) {
  const auto n = lam.size();
  std::vector<Eigen::VectorXd> pts;
  const Eigen::MatrixXd d = lam.asDiagonal();
  for (std::size_t k = 0; k < conjugates; ++k) {
    Eigen::MatrixXd g = random_orthogonal(static_cast<std::size_t>(n), rng);
    pts.push_back((g.transpose() * d * g).diagonal());
  }
  std::vector<Eigen::Index> idx(static_cast<std::size_t>(n));
  std::iota(idx.begin(), idx.end(), 0);
  do {
    Eigen::VectorXd p(n);
    for (Eigen::Index i = 0; i < n; ++i) p[i] = lam[idx[static_cast<std::size_t>(i)]];
    pts.push_back(p);
  } while (std::next_permutation(idx.begin(), idx.end()));
  return pts;
}

int check_kostant(const CheckArgs& args, const GlobalOptions& opts, RunReport& report) {
  std::size_t agree = 0;
  std::optional<std::string> first_mismatch;
  for (std::size_t i = 0; i < args.instances; ++i) {
    std::mt19937_64 rng(opts.seed * 1000003 + i);
    const Eigen::Index n = 2 + static_cast<Eigen::Index>(i % 4);
    std::uniform_int_distribution<int> coeff(-6, 6);
    Eigen::VectorXd lam(n);
    for (Eigen::Index k = 0; k < n; ++k) lam[k] = coeff(rng);
    lam[0] += 7;  // keeps the polytope full-dimensional
    auto hull = conjugate_hull(lam, args.conjugates, rng);
    const Eigen::VectorXd center = Eigen::VectorXd::Constant(n, lam.mean());
    Eigen::VectorXd y;
    if (i % 2 == 0) {
      std::uniform_real_distribution<double> unit(0, 1);
      Eigen::VectorXd mix = Eigen::VectorXd::Zero(n);
      double total = 0;
      for (int k = 0; k < 3; ++k) {
        const double w = unit(rng);
        mix += w * hull[rng() % hull.size()];
        total += w;
      }
      y = center + 0.9 * (mix / total - center);
    } else {
      y = center + 1.15 * (hull[args.conjugates + rng() % (hull.size() - args.conjugates)] - center);
    }
    const bool sorted = majorization_check(y, lam);
    const bool lp = hull_distance_l1(hull, y) <= 1e-6;
    if (sorted == lp) {
      ++agree;
    } else if (!first_mismatch) {
      first_mismatch = "y = " + json_vector(y) + ", lam = " + json_vector(lam);
    }
  }
  report.add("kostant.majorization_vs_lp", agree == args.instances,
             first_mismatch.value_or(std::to_string(agree) + "/" + std::to_string(args.instances)));

  std::size_t ok = 0;
  const std::size_t pairs = std::max<std::size_t>(1, args.instances / 2);
  std::optional<std::string> first_failure;
  for (std::size_t i = 0; i < pairs; ++i) {
    std::mt19937_64 rng(opts.seed * 7919 + i);
    std::uniform_int_distribution<int> coeff(-5, 5);
    const Eigen::Index n = 2 + static_cast<Eigen::Index>(i % 4);
    Eigen::MatrixXd v(n, n);
    for (Eigen::Index a = 0; a < n; ++a)
      for (Eigen::Index b = a; b < n; ++b) v(a, b) = v(b, a) = coeff(rng);
    Eigen::VectorXd lam(n);
    for (Eigen::Index k = 0; k < n; ++k) lam[k] = coeff(rng);
    ReductionReport r = reduction_equivalence_check(v, lam, args.conjugates, opts.seed + i);
    if (r.ok) {
      ++ok;
    } else if (!first_failure) {
      std::ostringstream msg;
      msg << "reduced " << r.reduced_value << ", sampled " << r.sampled_max << ", aligned " << r.aligned_value;
      first_failure = msg.str();
    }
  }
  report.add("kostant.reduction_equivalence", ok == pairs,
             first_failure.value_or(std::to_string(ok) + "/" + std::to_string(pairs)));
  return report.passed() ? kSuccess : kCheckFailure;
}

}  // namespace

void RunReport::add(std::string name, bool pass, std::string detail) {
  verdicts.push_back({std::move(name), pass ? "pass" : "fail", std::move(detail)});
}

void RunReport::skip(std::string name, std::string reason) {
  verdicts.push_back({std::move(name), "skipped", std::move(reason)});
}

bool RunReport::passed() const {
  return std::none_of(verdicts.begin(), verdicts.end(), [](const CheckVerdict& v) { return v.verdict == "fail"; });
}

Json RunReport::to_json() const {
  Json j;
  j["command"] = command;
  j["seed"] = seed;
  Json t = Json::object();
  for (const auto& s : timings) t[s.stage] = s.milliseconds;
  j["timings_ms"] = std::move(t);
  Json v = Json::array();
  for (const auto& c : verdicts) {
    Json e = {{"name", c.name}, {"verdict", c.verdict}};
    if (!c.detail.empty()) e["detail"] = c.detail;
    v.push_back(std::move(e));
  }
  j["verdicts"] = std::move(v);
  j["outputs"] = outputs;
  for (const auto& [k, val] : details.items()) j[k] = val;
  return j;
}

AffinePencil resolve_pencil(const std::string& source) { return pencil_source(source).pencil; }

GroupSpec resolve_group(const std::string& source) {
  if (std::filesystem::is_regular_file(source)) return group_from_json(read_document(source));
  try {
    return GroupSpec::builtin(source);
  } catch (const Error& e) {
    throw ParseError("'" + source + "' is neither a readable file nor a builtin group");
  }
}

RationalVector parse_rational_list(const std::string& text) {
  RationalVector out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    out.push_back(parse_rational(item));
  }
  return out;
}

int run_equivariantize(const EquivariantizeArgs& args, const GlobalOptions& opts, std::ostream& out,
                       std::ostream& err) {
  RunReport report{opts.command_line, opts.seed};
  return guarded(report, out, err, [&] {
    PencilSource src = pencil_source(args.pencil);
    GroupSpec g = resolve_group(args.group);
    EquivariantizeResult r = equivariantize_source(src, g, opts, &args);
    report.timings = r.timings;
    for (const auto& c : r.certificate) report.verdicts.push_back(c);
    Json doc = equivariant_to_json(r, g);
    if (args.orthonormal_view) {
      Json view = Json::array();
      for (const auto& m : orthonormal_view(r.description.Mbar, r.description.gram0)) {
        Json rows = Json::array();
        for (Eigen::Index i = 0; i < m.rows(); ++i) rows.push_back(json_row(m.row(i)));
        view.push_back(std::move(rows));
      }
      doc["Mbar_orthonormal_view"] = std::move(view);
    }
    write_output(opts, report, "equivariant", doc);
    return r.all_passed() ? kSuccess : kCheckFailure;
  });
}

int run_reduce(const std::string& family, std::size_t n, const std::string& objective, const GlobalOptions& opts,
               std::ostream& out, std::ostream& err) {
  RunReport report{opts.command_line, opts.seed};
  return guarded(report, out, err, [&] {
    if (family != "sym" && family != "skew") throw ParseError("family must be 'sym' or 'skew'");
    PolarFamily f(family == "sym" ? PolarKind::Sym : PolarKind::Skew, n);
    Eigen::MatrixXd v = real_matrix_from_json(read_document(objective));
    if (v.rows() != static_cast<Eigen::Index>(n) || v.cols() != static_cast<Eigen::Index>(n))
      throw ParseError("objective matrix must be " + std::to_string(n) + "x" + std::to_string(n));
    const auto start = Clock::now();
    ReducedProblem r = reduce_linear_problem(f, v);
    report.timings.push_back({"reduce", elapsed_ms(start)});
    report.details["savings"] = std::to_string(r.original_dim) + " -> " + std::to_string(r.reduced_dim);
    write_output(opts, report, "reduced", reduced_to_json(r, f));
    return kSuccess;
  });
}

int run_check(const CheckArgs& args, const GlobalOptions& opts, std::ostream& out, std::ostream& err) {
  RunReport report{opts.command_line, opts.seed};
  return guarded(report, out, err, [&]() -> int {
    const double tol = opts.tol.value_or(1e-9);
    auto need = [&](std::size_t k) {
      if (args.inputs.size() != k)
        throw ParseError("check " + args.which + " expects " + std::to_string(k) + " input(s)");
    };
    const auto start = Clock::now();
    if (args.which == "invariance") {
      need(2);
      InvarianceReport r =
          invariance_sample_check(resolve_pencil(args.inputs[0]), resolve_group(args.inputs[1]), opts.samples, tol,
                                  opts.seed);
      std::string detail = std::to_string(r.points) + " points";
      if (!r.invariant && r.witness_x) detail = "x = " + json_vector(*r.witness_x);
      report.add("invariance", r.invariant, detail);
    } else if (args.which == "equivariance") {
      need(2);
      GroupSpec g = resolve_group(args.inputs[1]);
      Json doc = read_document(args.inputs[0]);
      for (const char* key : {"Mbar_pencil", "gram0", "rho"})
        if (!doc.contains(key)) throw ParseError(args.inputs[0] + ": missing key '" + key + "'");
      AffinePencil mbar = pencil_from_json(doc["Mbar_pencil"]);
      RationalMatrix gram0 = rational_matrix_from_json(doc["gram0"], "gram0");
      RingMatrix rho = ring_matrix_from_json(doc["rho"], g, "rho");
      EquivarianceReport r = equivariance_check(mbar, gram0, rho, g);
      report.add("equivariance", r.ok, r.failure);
    } else if (args.which == "set") {
      need(2);
      SetEqualityReport r =
          set_equality_check(resolve_pencil(args.inputs[0]), resolve_pencil(args.inputs[1]), opts.samples, tol,
                             opts.seed);
      std::string detail = std::to_string(r.agree) + "/" + std::to_string(r.total);
      if (r.disagreement) detail += ", first disagreement at " + json_vector(*r.disagreement);
      report.add("set_equality", r.ok(), detail);
    } else if (args.which == "rigid") {
      need(1);
      Polynomial p = parse_polynomial(args.inputs[0]);
      RationalVector u = args.point.empty() ? RationalVector(p.nvars()) : parse_rational_list(args.point);
      RealZeroReport r = real_zero_check(p, u, args.directions);
      report.add("real_zero", r.ok,
                 r.witness ? "direction " + rational_list(*r.witness)
                           : std::to_string(r.directions_checked) + " directions");
    } else if (args.which == "kostant") {
      need(0);
      check_kostant(args, opts, report);
    } else if (args.which == "hopf") {
      need(0);
      HopfReport r = hopf_counterexample(720, opts.tol.value_or(1e-6));
      std::ostringstream w;
      w << "witness (0, 1, 0): hull distance " << r.witness.projection_hull_distance
        << ", squared distance to the segment " << to_string(r.witness.segment_distance_sq);
      report.add("hopf.witness_in_projection", r.witness.projection_hull_distance <= opts.tol.value_or(1e-6),
                 w.str());
      report.add("hopf.witness_off_section_orbitope", r.witness.segment_distance_sq >= Rational(1, 4),
                 "distance^2 = " + to_string(r.witness.segment_distance_sq));
      report.add("hopf.lift_outside_orbitope", r.lifted_witness_distance >= 0.5,
                 "L1 distance " + std::to_string(r.lifted_witness_distance));
      report.add("hopf.base_point", r.base_point.projection_hull_distance <= 1e-6 &&
                                        r.base_point.segment_distance_sq == 0);
      report.add("hopf.midpoint",
                 r.midpoint.projection_hull_distance <= 1e-6 && r.midpoint.segment_distance_sq == 0);
      report.details["witness"] = {0, 1, 0};
    } else {
      throw ParseError("unknown check '" + args.which + "'");
    }
    report.timings.push_back({args.which, elapsed_ms(start)});
    return report.passed() ? kSuccess : kCheckFailure;
  });
}

int run_examples(const std::string& name, const GlobalOptions& opts, std::ostream& out, std::ostream& err) {
  RunReport report{opts.command_line, opts.seed};
  return guarded(report, out, err, [&] {
    std::vector<std::string> names;
    if (name == "all") {
      names = {"disk", "quartic", "hermitian"};
    } else if (name == "disk" || name == "quartic" || name == "hermitian") {
      names = {name};
    } else {
      throw ParseError("unknown example '" + name + "'");
    }
    bool ok = true;
    for (const auto& n : names) {
      const auto start = Clock::now();
      ok = run_example(n, opts, report) && ok;
      report.timings.push_back({n, elapsed_ms(start)});
    }
    return ok ? kSuccess : kCheckFailure;
  });
}

}  // namespace equispectra::cli
