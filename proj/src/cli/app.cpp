#include "qsym/cli/app.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <future>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "qsym/central/central.hpp"
#include "qsym/cli/render.hpp"
#include "qsym/core/sampler.hpp"
#include "qsym/dynamics/euler.hpp"
#include "qsym/rigid/rigid.hpp"
#include "qsym/uea/quantum_rigid.hpp"
#include "qsym/weyl/weyl.hpp"

namespace qsym::cli {

namespace {

// Thrown for configurations that parse but are invalid; maps to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(item);
  return out;
}

std::vector<Rational> parse_rationals(const std::string& s) {
  std::vector<Rational> out;
  for (const auto& item : split_list(s)) {
    try {
      out.push_back(Rational::parse(item));
    } catch (const std::exception&) {
      throw UsageError("malformed rational '" + item + "'");
    }
  }
  return out;
}

std::vector<std::size_t> parse_partition(const std::string& s) {
  std::vector<std::size_t> out;
  for (const auto& item : split_list(s)) {
    std::size_t v = 0;
    auto res = std::from_chars(item.data(), item.data() + item.size(), v);
    if (res.ec != std::errc() || res.ptr != item.data() + item.size() || v == 0)
      throw UsageError("malformed partition entry '" + item + "'");
    out.push_back(v);
  }
  return out;
}

std::vector<double> parse_doubles(const std::string& s) {
  std::vector<double> out;
  for (const auto& item : split_list(s)) {
    double v = 0;
    auto res = std::from_chars(item.data(), item.data() + item.size(), v);
    if (res.ec != std::errc() || res.ptr != item.data() + item.size())
      throw UsageError("malformed number '" + item + "'");
    out.push_back(v);
  }
  return out;
}

json rational_list_json(const std::vector<Rational>& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(x.str());
  return out;
}

json header(const std::string& command) {
  return json{{"tool", kToolName}, {"version", kToolVersion}, {"command", command}};
}

// Writes to the output file when given, otherwise to `out`.
void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot open output file '" + path + "'");
  f << text;
}

std::string render_json(const json& doc) { return doc.dump(2) + "\n"; }

// Runs independent tasks on up to `threads` workers; results keep the task order.
std::vector<report::VerificationReport> run_parallel(const std::vector<std::function<report::VerificationReport()>>& tasks,
                                                     unsigned threads) {
  std::vector<report::VerificationReport> results(tasks.size());
  std::size_t next = 0;
  while (next < tasks.size()) {
    std::vector<std::future<report::VerificationReport>> batch;
    for (unsigned w = 0; w < threads && next < tasks.size(); ++w, ++next)
      batch.push_back(std::async(threads > 1 ? std::launch::async : std::launch::deferred, tasks[next]));
    const std::size_t first = next - batch.size();
    for (std::size_t b = 0; b < batch.size(); ++b) results[first + b] = batch[b].get();
  }
  return results;
}

struct TablesOptions {
  std::string which;
  std::size_t n = 0;
  std::size_t max_n = 6;
  std::size_t samples = 3;
  std::uint64_t seed = 1;
  std::string format = "markdown";
  std::string output;
};

int cmd_tables(const TablesOptions& o, std::ostream& out) {
  json doc = header("tables");
  json rows = json::array();
  bool verified = true;
  const std::vector<Column>* columns = nullptr;
  if (o.which == "rigid-body") {
    const std::size_t max_n = o.n ? o.n : o.max_n;
    if (max_n < 3 || max_n > 7) throw UsageError("rigid-body tables need 3 <= n <= 7");
    auto rep = rigid::verify_rigid_table(max_n, o.samples, o.seed);
    std::map<std::string, const report::Check*> by_id;
    for (const auto& c : rep.checks) by_id[c.id] = &c;
    for (const auto& row : rigid::rigid_table(max_n)) {
      if (o.n && row.n != o.n) continue;
      const auto* c = by_id.at("rigid-table/n" + std::to_string(row.n) + "/q" + rigid::partition_label(row.q));
      const bool ok = c->status != report::Status::Fail;
      verified = verified && ok;
      rows.push_back({{"n", row.n},
                      {"q", row.q},
                      {"k", row.counts.k},
                      {"r", row.counts.r},
                      {"kbar", row.counts.kbar},
                      {"status", ok ? "verified" : "FAIL: " + c->witness}});
    }
    doc["config"] = {{"table", o.which}, {"n", o.n}, {"max_n", max_n}, {"samples", o.samples}, {"seed", o.seed}};
    columns = &rigid_table_columns();
  } else {
    const std::size_t n = o.n ? o.n : 4;
    std::vector<central::TableRow> table;
    try {
      table = central::central_table(n);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    auto rep = central::verify_central_tables(n, o.samples, o.seed);
    for (const auto& row : table) {
      const std::string prefix = "table-n" + std::to_string(n) + "/row" + std::to_string(row.row) + "/";
      std::string failures;
      for (const auto& c : rep.checks)
        if (c.id.rfind(prefix, 0) == 0 && c.status == report::Status::Fail) failures += (failures.empty() ? "" : "; ") + c.id;
      verified = verified && failures.empty();
      rows.push_back({{"row", row.row},
                      {"set", row.set.render()},
                      {"k", row.k},
                      {"status", failures.empty() ? "verified" : "FAIL: " + failures}});
    }
    doc["config"] = {{"table", o.which}, {"n", n}, {"samples", o.samples}, {"seed", o.seed}};
    columns = &central_table_columns();
  }
  doc["verified"] = verified;
  doc["rows"] = rows;
  emit(o.format == "json" ? render_json(doc) : to_markdown(*columns, rows), o.output, out);
  return verified ? kExitOk : kExitFailure;
}

struct VerifyOptions {
  std::string scope;
  std::size_t n = 0;
  std::string q;
  std::string lambda;
  std::string alpha = "1";
  std::string mode;
  std::size_t samples = 3;
  std::size_t max_depth = 3;
  std::uint64_t seed = 1;
  std::string format = "json";
  std::string output;
  bool timings = false;
};

struct ResolvedVerify {
  std::size_t n = 3;
  std::vector<std::size_t> q;
  std::vector<Rational> lambda;
  Rational alpha{1};
  std::optional<rigid::Mode> mode;
};

ResolvedVerify resolve(const VerifyOptions& o) {
  ResolvedVerify r;
  if (!o.q.empty() && !o.lambda.empty()) throw UsageError("give either --q or --lambda, not both");
  if (!o.q.empty()) {
    r.q = parse_partition(o.q);
    std::size_t sum = 0;
    for (auto x : r.q) sum += x;
    if (o.n && o.n != sum) throw UsageError("--n does not match the partition");
    r.n = sum;
  } else if (!o.lambda.empty()) {
    r.lambda = parse_rationals(o.lambda);
    for (const auto& l : r.lambda)
      if (!(Rational(0) < l)) throw UsageError("moments must be positive");
    if (o.n && o.n != r.lambda.size()) throw UsageError("--n does not match the number of moments");
    r.n = r.lambda.size();
  } else if (o.n) {
    r.n = o.n;
  }
  auto alpha = parse_rationals(o.alpha);
  if (alpha.size() != 1) throw UsageError("--alpha takes one rational");
  r.alpha = alpha.front();
  if (o.mode == "symbolic") r.mode = rigid::Mode::Symbolic;
  if (o.mode == "sampled") r.mode = rigid::Mode::Sampled;
  return r;
}

json verify_config(const VerifyOptions& o, const ResolvedVerify& r) {
  json c = {{"scope", o.scope}, {"n", r.n}, {"seed", o.seed}, {"samples", o.samples}};
  if (o.scope == "classical-central" || o.scope == "quantum-central" || o.scope == "all") {
    c["alpha"] = r.alpha.str();
    c["max_depth"] = o.max_depth;
  }
  if (o.scope == "classical-rigid" || o.scope == "quantum-rigid" || o.scope == "all") {
    if (!r.q.empty()) c["q"] = r.q;
    if (!r.lambda.empty()) c["lambda"] = rational_list_json(r.lambda);
    c["mode"] = o.mode.empty() ? "default" : o.mode;
  }
  return c;
}

int cmd_verify(const VerifyOptions& o, std::ostream& out) {
  const ResolvedVerify r = resolve(o);
  if (r.n < 2) throw UsageError("n must be at least 2");
  const bool rigid_scope = o.scope == "classical-rigid" || o.scope == "quantum-rigid" || o.scope == "all";
  if (rigid_scope && (r.n < 3 || r.n > 6)) throw UsageError("rigid-body suites need 3 <= n <= 6");

  auto classical_central = [&] {
    central::ClassicalCentralConfig cfg;
    cfg.n = r.n;
    cfg.alpha = r.alpha;
    cfg.samples = o.samples;
    cfg.seed = o.seed;
    cfg.max_tree_depth = o.max_depth;
    return central::verify_classical_central(cfg);
  };
  auto quantum_central = [&] {
    weyl::QuantumCentralConfig cfg;
    cfg.n = r.n;
    cfg.alpha = r.alpha;
    cfg.samples = o.samples;
    cfg.seed = o.seed;
    cfg.max_tree_depth = o.max_depth;
    return weyl::quantum_central_force_suite(cfg);
  };
  auto classical_rigid = [&] {
    rigid::ClassicalRigidConfig cfg;
    cfg.n = r.n;
    cfg.q = r.q;
    cfg.lambda = r.lambda;
    if (r.mode) cfg.mode = *r.mode;
    cfg.samples = o.samples;
    cfg.seed = o.seed;
    return rigid::verify_classical_rigid(cfg);
  };
  auto quantum_rigid = [&] {
    uea::QuantumRigidConfig cfg;
    cfg.n = r.n;
    cfg.q = r.q;
    cfg.lambda = r.lambda;
    cfg.mode = r.mode;
    cfg.samples = o.samples;
    cfg.seed = o.seed;
    return uea::verify_quantum_rigid(cfg);
  };

  std::vector<std::function<report::VerificationReport()>> tasks;
  if (o.scope == "classical-central" || o.scope == "all") tasks.push_back(classical_central);
  if (o.scope == "quantum-central" || o.scope == "all") tasks.push_back(quantum_central);
  if (o.scope == "classical-rigid" || o.scope == "all") tasks.push_back(classical_rigid);
  if (o.scope == "quantum-rigid" || o.scope == "all") tasks.push_back(quantum_rigid);

  report::VerificationReport rep;
  try {
    for (const auto& part : run_parallel(tasks, thread_count())) rep.append(part);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  json doc = header("verify");
  doc["config"] = verify_config(o, r);
  if (o.scope == "classical-rigid") {
    auto q = r.q.empty() ? (r.lambda.empty() ? std::vector<std::size_t>(r.n, 1)
                                             : son::MomentSpec::explicit_values(r.lambda).q())
                         : r.q;
    std::sort(q.begin(), q.end());
    auto counts = rigid::centrality_defect(q);
    doc["counts"] = {{"rank", counts.rank}, {"k", counts.k}, {"r", counts.r}, {"kbar", counts.kbar}};
  }
  doc["passed"] = rep.passed();
  doc["failures"] = rep.failures();
  doc["checks"] = checks_json(rep, o.timings);

  std::string text;
  if (o.format == "json") {
    text = render_json(doc);
  } else {
    text = "# " + std::string(kToolName) + " verify " + o.scope + "\n\n";
    text += "result: " + std::string(rep.passed() ? "pass" : "FAIL") + ", " + std::to_string(rep.checks.size()) +
            " checks, " + std::to_string(rep.failures()) + " failures\n\n";
    text += to_markdown(check_columns(), doc["checks"]);
  }
  emit(text, o.output, out);
  return rep.passed() ? kExitOk : kExitFailure;
}

struct SimulateOptions {
  std::size_t n = 0;
  std::string lambda;
  std::string p0;
  double t_end = 10.0;
  double dt = 1e-3;
  std::size_t stride = 1;
  std::uint64_t seed = 1;
  double tolerance = 1e-6;
  std::string csv = "trajectory.csv";
  std::string output;
};

int cmd_simulate(const SimulateOptions& o, std::ostream& out, std::ostream& err) {
  auto lam = parse_rationals(o.lambda);
  if (lam.size() < 2) throw UsageError("--lambda needs at least two moments");
  for (const auto& l : lam)
    if (!(Rational(0) < l)) throw UsageError("moments must be positive");
  if (o.n && o.n != lam.size()) throw UsageError("--n does not match the number of moments");
  if (!(o.t_end > 0.0) || !(o.dt > 0.0) || o.stride == 0 || !(o.tolerance >= 0.0))
    throw UsageError("t-end, dt, stride must be positive and the tolerance non-negative");
  const std::size_t n = lam.size();

  std::vector<double> upper;
  if (o.p0.empty()) {
    Sampler s(o.seed);
    for (std::size_t a = 0; a < n * (n - 1) / 2; ++a) upper.push_back(s.uniform(-1.0, 1.0));
  } else {
    upper = parse_doubles(o.p0);
    if (upper.size() != n * (n - 1) / 2) throw UsageError("--p0 needs n(n-1)/2 entries");
  }
  std::vector<double> lam_d;
  for (const auto& l : lam) lam_d.push_back(l.to_double());
  const auto steps = static_cast<std::size_t>(std::llround(o.t_end / o.dt));

  dynamics::Trajectory traj;
  try {
    traj = dynamics::integrate(dynamics::FlowState::from_upper(lam_d, upper), {o.dt, steps, o.stride});
  } catch (const dynamics::NonFiniteError& e) {
    err << "simulate: " << e.what() << "\n";
    return kExitFailure;
  }
  const auto invariants = dynamics::rigid_invariants(lam);
  if (o.csv == "-") {
    dynamics::write_csv(out, traj, invariants);
  } else {
    std::ofstream f(o.csv, std::ios::binary);
    if (!f) throw UsageError("cannot open CSV file '" + o.csv + "'");
    dynamics::write_csv(f, traj, invariants);
  }

  bool ok = true;
  json drift = json::array();
  for (const auto& d : dynamics::conservation_report(traj, invariants)) {
    const bool within = d.drift <= o.tolerance;
    ok = ok && within;
    drift.push_back({{"label", d.label}, {"initial", d.initial}, {"drift", d.drift}, {"within_tolerance", within}});
  }
  json doc = header("simulate");
  doc["config"] = {{"n", n},         {"lambda", rational_list_json(lam)}, {"p0", upper},
                   {"t_end", o.t_end}, {"dt", o.dt},                      {"steps", steps},
                   {"stride", o.stride}, {"seed", o.seed},                {"tolerance", o.tolerance}};
  doc["passed"] = ok;
  doc["drift"] = drift;
  emit(render_json(doc), o.output, o.csv == "-" ? err : out);
  return ok ? kExitOk : kExitFailure;
}

}  // namespace

unsigned thread_count() {
  const char* env = std::getenv("QSYM_THREADS");
  if (!env) return 1;
  unsigned v = 0;
  const std::string_view s(env);
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || v == 0) return 1;
  return v;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact verification of integrable rigid-body and central-force systems", kToolName};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  TablesOptions tables;
  auto* t = app.add_subcommand("tables", "Emit the verified integrable-set tables");
  t->add_option("which", tables.which, "central-force or rigid-body")
      ->required()
      ->check(CLI::IsMember({"central-force", "rigid-body"}));
  t->add_option("--n", tables.n, "Dimension (central-force: 4 or 5; rigid-body: rows of this n only)");
  t->add_option("--max-n", tables.max_n, "Largest dimension of the rigid-body table")->capture_default_str();
  t->add_option("--samples", tables.samples, "Random points per row")->capture_default_str();
  t->add_option("--seed", tables.seed, "Seed for all sampling")->capture_default_str();
  t->add_option("--format", tables.format)->check(CLI::IsMember({"json", "markdown"}))->capture_default_str();
  t->add_option("--output", tables.output, "Output file (default: stdout)");

  VerifyOptions verify;
  auto* v = app.add_subcommand("verify", "Run a verification suite");
  v->add_option("scope", verify.scope)
      ->required()
      ->check(CLI::IsMember({"classical-central", "quantum-central", "classical-rigid", "quantum-rigid", "all"}));
  v->add_option("--n", verify.n, "Dimension (default 3, or implied by --q / --lambda)");
  auto* vq = v->add_option("--q", verify.q, "Partition of equal moments, e.g. 1,2,3 (symbolic moments)");
  auto* vl = v->add_option("--lambda", verify.lambda, "Explicit moments as p/q rationals, e.g. 1,2,5/2");
  vq->excludes(vl);
  v->add_option("--alpha", verify.alpha, "Kepler coupling as a p/q rational")->capture_default_str();
  v->add_option("--mode", verify.mode, "Override the rigid-body mode")->check(CLI::IsMember({"symbolic", "sampled"}));
  v->add_option("--samples", verify.samples, "Random samples per sampled check")->capture_default_str();
  v->add_option("--max-depth", verify.max_depth, "Deepest splitting tree for central-force sets")->capture_default_str();
  v->add_option("--seed", verify.seed, "Seed for all sampling")->capture_default_str();
  v->add_option("--format", verify.format)->check(CLI::IsMember({"json", "markdown"}))->capture_default_str();
  v->add_option("--output", verify.output, "Output file (default: stdout)");
  v->add_flag("--timings", verify.timings, "Include per-check elapsed_ms (output is then not reproducible)");

  SimulateOptions sim;
  auto* s = app.add_subcommand("simulate", "Integrate the Euler equations and report invariant drift");
  s->add_option("--n", sim.n, "Dimension (implied by --lambda)");
  s->add_option("--lambda", sim.lambda, "Moments as p/q rationals")->required();
  s->add_option("--p0", sim.p0, "Initial momentum entries in pair order (default: uniform in [-1,1] from --seed)");
  s->add_option("--t-end", sim.t_end)->capture_default_str();
  s->add_option("--dt", sim.dt)->capture_default_str();
  s->add_option("--stride", sim.stride, "Record every stride-th step")->capture_default_str();
  s->add_option("--seed", sim.seed)->capture_default_str();
  s->add_option("--tolerance", sim.tolerance, "Largest accepted relative drift")->capture_default_str();
  s->add_option("--csv", sim.csv, "Trajectory CSV path, '-' for stdout")->capture_default_str();
  s->add_option("--output", sim.output, "Drift JSON path (default: stdout)");

  std::vector<std::string> argv_store{kToolName};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n" << "run with --help for usage\n";
    return kExitUsage;
  }

  try {
    if (*t) return cmd_tables(tables, out);
    if (*v) return cmd_verify(verify, out);
    return cmd_simulate(sim, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace qsym::cli
