#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "eoa/bounds.hpp"
#include "eoa/channel.hpp"
#include "eoa/measures.hpp"
#include "eoa/monogamy.hpp"
#include "eoa/oracle.hpp"
#include "eoa/parallel.hpp"
#include "eoa/rng.hpp"
#include "eoa/state_io.hpp"
#include "eoa/states.hpp"

namespace {

using namespace eoa;
using nlohmann::json;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

Dims parse_dims(const std::string& text) {
  Dims dims;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      dims.push_back(static_cast<Index>(std::stol(part)));
    } catch (const std::exception&) {
      throw std::invalid_argument("cannot parse dimension \"" + part + "\" in --sample");
    }
  }
  if (dims.empty()) throw std::invalid_argument("--sample needs a comma-separated dim list");
  return dims;
}

json load_config(const std::string& path) {
  if (path.empty()) return json::object();
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("malformed JSON in config " + path + ": " + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("config file must hold a JSON object");
  return j;
}

// Config file values fill in whatever the command line left untouched.
template <typename T>
void merge_option(const json& cfg, const char* key, const CLI::Option* opt, T& target) {
  if (opt != nullptr && opt->count() > 0) return;
  if (!cfg.contains(key)) return;
  try {
    target = cfg.at(key).get<T>();
  } catch (const json::exception&) {
    throw std::invalid_argument(std::string("config field \"") + key + "\" has the wrong type");
  }
}

struct OutputSink {
  std::ofstream file;
  bool to_file = false;

  explicit OutputSink(const std::string& path) {
    if (path.empty()) return;
    file.open(path);
    if (!file) throw std::invalid_argument("cannot write output file: " + path);
    to_file = true;
  }
  std::ostream& stream() { return to_file ? static_cast<std::ostream&>(file) : std::cout; }
  void finish() {
    if (!to_file) return;
    file.flush();
    if (!file) throw std::runtime_error("writing the output file failed");
  }
};

json oracle_result_to_json(const OracleResult& r) {
  return json{{"value", r.value},
              {"k", r.k_used},
              {"restarts", r.restarts_run},
              {"converged", r.converged},
              {"members", r.best_ensemble.members.size()}};
}

// Shared flags: every subcommand carries format/output/config plumbing.
struct CommonFlags {
  std::string format = "table";
  std::string output;
  std::string config_path;
  int jobs = 1;
  std::uint64_t seed = 0;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* format_opt = nullptr;
  CLI::Option* jobs_opt = nullptr;

  void attach(CLI::App* cmd) {
    format_opt = cmd->add_option("--format", format, "output format: table, json or csv")
                     ->check(CLI::IsMember({"table", "json", "csv"}));
    cmd->add_option("--output", output, "write the report here instead of stdout");
    cmd->add_option("--config", config_path, "JSON config file; flags override its values");
    jobs_opt = cmd->add_option("--jobs", jobs, "parallel workers for campaigns");
    seed_opt = cmd->add_option("--seed", seed, "campaign seed");
  }
  void merge(const json& cfg) {
    merge_option(cfg, "format", format_opt, format);
    merge_option(cfg, "jobs", jobs_opt, jobs);
    merge_option(cfg, "seed", seed_opt, seed);
    if (jobs < 1) throw std::invalid_argument("--jobs must be at least 1");
  }
};

struct OptimizerFlags {
  OptimizerConfig cfg;
  CLI::Option* restarts = nullptr;
  CLI::Option* tol = nullptr;
  CLI::Option* max_iter = nullptr;

  void attach(CLI::App* cmd) {
    restarts = cmd->add_option("--restarts", cfg.restarts, "optimizer restarts");
    tol = cmd->add_option("--tol", cfg.tol, "relative improvement stop threshold");
    max_iter = cmd->add_option("--max-iter", cfg.max_iter, "iteration cap per restart");
  }
  void merge(const json& cfg_json) {
    merge_option(cfg_json, "restarts", restarts, cfg.restarts);
    merge_option(cfg_json, "tol", tol, cfg.tol);
    merge_option(cfg_json, "max_iter", max_iter, cfg.max_iter);
  }
};

struct OracleFlags {
  OracleConfig cfg;
  CLI::Option* restarts = nullptr;
  CLI::Option* k = nullptr;
  CLI::Option* max_evals = nullptr;

  void attach(CLI::App* cmd) {
    restarts = cmd->add_option("--restarts", cfg.restarts, "search restarts");
    k = cmd->add_option("--k", cfg.k, "ensemble size; 0 picks rank squared");
    max_evals = cmd->add_option("--max-evals", cfg.max_evals, "objective evaluations per restart");
  }
  void merge(const json& cfg_json) {
    merge_option(cfg_json, "restarts", restarts, cfg.restarts);
    if ((k == nullptr || k->count() == 0) && cfg_json.contains("k") &&
        cfg_json.at("k").is_string()) {
      if (cfg_json.at("k").get<std::string>() != "auto")
        throw std::invalid_argument("config field \"k\" must be an integer or \"auto\"");
      cfg.k = 0;
    } else {
      merge_option(cfg_json, "k", k, cfg.k);
    }
    merge_option(cfg_json, "max_evals", max_evals, cfg.max_evals);
  }
};

// Returns the state a bounds/tangle run works on plus a label for reports.
struct StateSource {
  std::string input_path;
  std::string sample_dims_text;
  bool mixed_sample = false;
  Index sample_rank = 1;
  std::string dump_path;

  void attach(CLI::App* cmd) {
    cmd->add_option("state", input_path, "state file (JSON)");
    cmd->add_option("--sample", sample_dims_text, "sample a pure state with these dims instead");
    cmd->add_flag("--mixed", mixed_sample, "sample a mixed state");
    cmd->add_option("--rank", sample_rank, "rank of the sampled mixed state");
    cmd->add_option("--dump", dump_path, "also write the analyzed state to this file");
  }

  QState resolve(std::uint64_t seed, std::string& label) const {
    if (!sample_dims_text.empty()) {
      const Dims dims = parse_dims(sample_dims_text);
      std::string shape = sample_dims_text;
      std::replace(shape.begin(), shape.end(), ',', 'x');  // keep CSV fields comma-free
      label = "sample-" + shape + "-seed" + std::to_string(seed);
      if (mixed_sample) return random_mixed(dims, sample_rank, seed);
      return haar_random_pure(dims, seed);
    }
    if (input_path.empty())
      throw std::invalid_argument("give a state file or --sample dims");
    label = input_path;
    return load_state(input_path);
  }

  void maybe_dump(const QState& state) const {
    if (!dump_path.empty()) save_state(dump_path, state);
  }
};

QState to_bipartite(const QState& state, int trace_out) {
  const int n = static_cast<int>(state.dims().size());
  if (n == 2) {
    if (state.is_pure()) return QState::mixed(state.dims(), state.density());
    return state;
  }
  if (n < 2) throw std::invalid_argument("need at least two subsystems");
  const int drop = trace_out < 0 ? n - 1 : trace_out;
  if (drop < 0 || drop >= n) throw std::invalid_argument("--trace-out index out of range");
  std::vector<int> keep;
  for (int i = 0; i < n; ++i)
    if (i != drop) keep.push_back(i);
  QState reduced = partial_trace(state, keep);
  if (reduced.dims().size() != 2)
    throw std::invalid_argument("state must reduce to exactly two subsystems");
  return reduced;
}

int run_bounds(const CommonFlags& common, const OptimizerFlags& opt, const StateSource& source,
               int trace_out) {
  std::string label;
  const QState state = source.resolve(common.seed, label);
  source.maybe_dump(state);
  const QState rho = to_bipartite(state, trace_out);

  OptimizerConfig cfg = opt.cfg;
  cfg.seed = common.seed;
  const ABlockSet blocks = build_a_blocks(rho);
  const BoundReport report = eoa_lower_bound(blocks, cfg);
  const UpperBound upper = eoa_upper_bound(rho);

  OutputSink sink(common.output);
  std::ostream& out = sink.stream();
  if (common.format == "json") {
    json j{{"command", "bounds"},
           {"state", label},
           {"seed", common.seed},
           {"dims", rho.dims()},
           {"rank", blocks.rank},
           {"lower", report.lower},
           {"upper", upper.concurrence},
           {"upper_tangle", upper.tangle},
           {"converged", report.converged},
           {"restarts", report.optimizer_trace.size()}};
    out << j.dump(2) << '\n';
  } else if (common.format == "csv") {
    out << "# seed=" << common.seed << '\n'
        << "state,rank,lower,upper,upper_tangle,converged\n"
        << label << ',' << blocks.rank << ',' << fmt(report.lower) << ','
        << fmt(upper.concurrence) << ',' << fmt(upper.tangle) << ','
        << (report.converged ? 1 : 0) << '\n';
  } else {
    out << "bounds report\n"
        << "  state         " << label << '\n'
        << "  seed          " << common.seed << '\n'
        << "  dims          " << rho.dims()[0] << 'x' << rho.dims()[1] << "  rank "
        << blocks.rank << '\n'
        << "  lower         " << fmt(report.lower) << '\n'
        << "  upper         " << fmt(upper.concurrence) << '\n'
        << "  upper_tangle  " << fmt(upper.tangle) << '\n'
        << "  converged     " << (report.converged ? "yes" : "no") << '\n';
    int idx = 0;
    for (const RestartTrace& t : report.optimizer_trace) {
      out << "  restart " << idx++ << "  best " << fmt(t.best) << "  iterations "
          << t.iterations << '\n';
    }
  }
  sink.finish();
  return 0;
}

int run_tangle(const CommonFlags& common, const OracleFlags& oracle, const StateSource& source,
               int trace_out) {
  std::string label;
  const QState state = source.resolve(common.seed, label);
  source.maybe_dump(state);
  const QState rho = to_bipartite(state, trace_out);

  OracleConfig cfg = oracle.cfg;
  cfg.seed = common.seed;
  const OracleResult tangle = tangle_oracle(rho, cfg);
  cfg.seed = sub_seed(common.seed, 1);
  const OracleResult eoa_value = eoa_oracle(rho, cfg);
  const UpperBound upper = eoa_upper_bound(rho);
  const bool two_qubit = rho.dims()[0] == 2 && rho.dims()[1] == 2;
  const double ca = two_qubit ? concurrence_of_assistance_2q(rho).value : -1.0;

  OutputSink sink(common.output);
  std::ostream& out = sink.stream();
  if (common.format == "json") {
    json j{{"command", "tangle"},
           {"state", label},
           {"seed", common.seed},
           {"dims", rho.dims()},
           {"tangle", oracle_result_to_json(tangle)},
           {"eoa", oracle_result_to_json(eoa_value)},
           {"upper_tangle", upper.tangle}};
    if (two_qubit) j["closed_form_ca"] = ca;
    out << j.dump(2) << '\n';
  } else if (common.format == "csv") {
    out << "# seed=" << common.seed << '\n'
        << "state,tangle,eoa,upper_tangle,closed_form_ca,converged\n"
        << label << ',' << fmt(tangle.value) << ',' << fmt(eoa_value.value) << ','
        << fmt(upper.tangle) << ',' << (two_qubit ? fmt(ca) : "") << ','
        << (tangle.converged ? 1 : 0) << '\n';
  } else {
    out << "tangle report\n"
        << "  state         " << label << '\n'
        << "  seed          " << common.seed << '\n'
        << "  tangle        " << fmt(tangle.value) << "  (k " << tangle.k_used
        << ", converged " << (tangle.converged ? "yes" : "no") << ")\n"
        << "  eoa           " << fmt(eoa_value.value) << '\n'
        << "  upper_tangle  " << fmt(upper.tangle) << '\n';
    if (two_qubit)
      out << "  closed_form   " << fmt(ca) << "  (assistance concurrence)\n";
  }
  sink.finish();
  return 0;
}

struct MonogamyCampaign {
  std::vector<std::string> files;
  int ghz_n = 0;
  double theta = kPi / 4.0;
  int product_n = 0;
  int random_count = 0;
  int random_n = 3;
  bool mixed = false;
  Index rank = 2;
  int head = 0;

  void attach(CLI::App* cmd) {
    cmd->add_option("states", files, "state files to check");
    cmd->add_option("--ghz", ghz_n, "check the n-qubit GHZ state");
    cmd->add_option("--theta", theta, "GHZ interpolation angle");
    cmd->add_option("--product", product_n, "check a random n-qubit product state");
    cmd->add_option("--random", random_count, "number of random states to sample");
    cmd->add_option("--n", random_n, "qubit count for --random");
    cmd->add_flag("--mixed", mixed, "sample mixed states for --random");
    cmd->add_option("--rank", rank, "rank of sampled mixed states");
    cmd->add_option("--head", head, "head subsystem of the inequality");
  }
};

int run_monogamy(const CommonFlags& common, const OracleFlags& oracle,
                 const MonogamyCampaign& campaign) {
  struct Job {
    std::string id;
    QState state;
  };
  std::vector<Job> jobs;
  if (campaign.ghz_n > 0)
    jobs.push_back({"ghz" + std::to_string(campaign.ghz_n), ghz_state(campaign.ghz_n, campaign.theta)});
  if (campaign.product_n > 0) {
    Dims dims(static_cast<std::size_t>(campaign.product_n), 2);
    jobs.push_back({"product" + std::to_string(campaign.product_n),
                    product_pure(dims, sub_seed(common.seed, 0x9d0))});
  }
  for (int i = 0; i < campaign.random_count; ++i) {
    Dims dims(static_cast<std::size_t>(campaign.random_n), 2);
    const std::uint64_t state_seed = sub_seed(common.seed, static_cast<std::uint64_t>(i));
    const std::string id = (campaign.mixed ? "mixed" : "haar") +
                           std::to_string(campaign.random_n) + "q-i" + std::to_string(i) +
                           "-s" + std::to_string(state_seed);
    jobs.push_back({id, campaign.mixed ? random_mixed(dims, campaign.rank, state_seed)
                                       : haar_random_pure(dims, state_seed)});
  }
  for (const std::string& path : campaign.files) jobs.push_back({path, load_state(path)});
  if (jobs.empty())
    throw std::invalid_argument("nothing to check: give state files, --ghz, --product or --random");

  std::vector<MonogamyReport> reports(jobs.size());
  parallel_for(static_cast<Index>(jobs.size()), common.jobs, [&](Index i) {
    OracleConfig cfg = oracle.cfg;
    cfg.seed = sub_seed(common.seed, 0xc0ffee00ULL + static_cast<std::uint64_t>(i));
    MonogamyReport rep = monogamy_check(jobs[static_cast<std::size_t>(i)].state,
                                        campaign.head, cfg);
    rep.state_id = jobs[static_cast<std::size_t>(i)].id;
    reports[static_cast<std::size_t>(i)] = std::move(rep);
  });

  double min_margin = reports.empty() ? 0.0 : reports.front().margin;
  int candidates = 0;
  std::size_t max_pairwise = 0;
  for (const MonogamyReport& r : reports) {
    min_margin = std::min(min_margin, r.margin);
    candidates += r.violation_candidate ? 1 : 0;
    max_pairwise = std::max(max_pairwise, r.pairwise.size());
  }

  OutputSink sink(common.output);
  std::ostream& out = sink.stream();
  if (common.format == "json") {
    json arr = json::array();
    for (const MonogamyReport& r : reports) {
      json diag = json::array();
      for (const OracleResult& d : r.diagnostics) diag.push_back(oracle_result_to_json(d));
      arr.push_back(json{{"state_id", r.state_id},
                         {"n", r.n},
                         {"kind", r.kind},
                         {"rank", r.rank},
                         {"pairwise", r.pairwise},
                         {"bipartite", r.bipartite},
                         {"margin", r.margin},
                         {"quality", r.quality},
                         {"escalation_rounds", r.escalation_rounds},
                         {"closed_form_boost", r.closed_form_boost},
                         {"violation_candidate", r.violation_candidate},
                         {"diagnostics", diag}});
    }
    json j{{"command", "monogamy"},
           {"seed", common.seed},
           {"min_margin", min_margin},
           {"violation_candidates", candidates},
           {"reports", arr}};
    out << j.dump(2) << '\n';
  } else if (common.format == "csv") {
    out << "# seed=" << common.seed << '\n';
    out << "state_id,n,kind,rank";
    for (std::size_t p = 1; p <= max_pairwise; ++p) out << ",pairwise_" << p;
    out << ",bipartite,margin,quality\n";
    for (const MonogamyReport& r : reports) {
      out << r.state_id << ',' << r.n << ',' << r.kind << ',' << r.rank;
      for (std::size_t p = 0; p < max_pairwise; ++p)
        out << ',' << (p < r.pairwise.size() ? fmt(r.pairwise[p]) : "");
      out << ',' << fmt(r.bipartite) << ',' << fmt(r.margin) << ',' << (r.quality ? 1 : 0)
          << '\n';
    }
  } else {
    out << "monogamy campaign  (seed " << common.seed << ", head " << campaign.head << ")\n";
    for (const MonogamyReport& r : reports) {
      out << "  " << r.state_id << "  n=" << r.n << ' ' << r.kind << " rank=" << r.rank
          << "  margin " << fmt(r.margin) << (r.violation_candidate ? "  VIOLATION?" : "")
          << (r.closed_form_boost ? "  [closed-form boost]" : "") << '\n';
    }
  }

  std::ostream& summary = common.format == "table" ? out : std::cerr;
  summary << "checked " << reports.size() << " state(s), min margin " << fmt(min_margin)
          << ", violation candidates " << candidates << " (seed " << common.seed << ")\n";
  sink.finish();
  return 0;
}

int run_channel(const CommonFlags& common, const OracleFlags& oracle,
                const std::string& input_path) {
  const QState rho_in = load_state(input_path);
  QState rho = rho_in.is_pure() && rho_in.dims().size() == 2
                   ? QState::mixed(rho_in.dims(), rho_in.density())
                   : rho_in;
  if (rho.dims().size() != 2 || rho.dims()[0] != 2 || rho.dims()[1] != 2)
    throw std::invalid_argument("channel analysis needs a two-qubit state");

  const Matrix rho_b = partial_trace(rho, {1}).matrix();
  bool filtered = false;
  if ((rho_b - Matrix::Identity(2, 2) * 0.5).cwiseAbs().maxCoeff() > 1e-8) {
    rho = normalize_filter(rho).second;  // throws with a hint when rank deficient
    filtered = true;
  }

  OracleConfig cfg = oracle.cfg;
  cfg.seed = common.seed;
  const ChainReport chain = final_chain_check(rho, cfg);

  OutputSink sink(common.output);
  std::ostream& out = sink.stream();
  if (common.format == "json") {
    json j{{"command", "channel"},
           {"state", input_path},
           {"seed", common.seed},
           {"filtered", filtered},
           {"tangle", chain.tangle},
           {"ca_squared", chain.ca_squared},
           {"sigma_chain", chain.sigma_chain},
           {"i_lower", chain.i_lower},
           {"margins", chain.margins},
           {"tangle_diag", oracle_result_to_json(chain.tangle_result)}};
    out << j.dump(2) << '\n';
  } else if (common.format == "csv") {
    out << "# seed=" << common.seed << '\n'
        << "state,filtered,tangle,ca_squared,sigma_chain,i_lower,margin_1,margin_2,margin_3\n"
        << input_path << ',' << (filtered ? 1 : 0) << ',' << fmt(chain.tangle) << ','
        << fmt(chain.ca_squared) << ',' << fmt(chain.sigma_chain) << ','
        << fmt(chain.i_lower) << ',' << fmt(chain.margins[0]) << ',' << fmt(chain.margins[1])
        << ',' << fmt(chain.margins[2]) << '\n';
  } else {
    out << "channel chain report\n"
        << "  state         " << input_path << '\n'
        << "  seed          " << common.seed << '\n';
    if (filtered) out << "  note          B side balanced by a local filter first\n";
    out << "  tangle        " << fmt(chain.tangle) << '\n'
        << "  ca_squared    " << fmt(chain.ca_squared) << '\n'
        << "  sigma_chain   " << fmt(chain.sigma_chain) << '\n'
        << "  i_lower       " << fmt(chain.i_lower) << '\n'
        << "  margins       " << fmt(chain.margins[0]) << ", " << fmt(chain.margins[1]) << ", "
        << fmt(chain.margins[2]) << '\n';
  }
  sink.finish();
  return 0;
}

int run_sample(const CommonFlags& common, const std::string& dims_spec, bool mixed, Index rank) {
  const Dims dims = parse_dims(dims_spec);
  const QState state =
      mixed ? random_mixed(dims, rank, common.seed) : haar_random_pure(dims, common.seed);
  OutputSink sink(common.output);
  sink.stream() << state_to_json(state).dump(2) << '\n';
  sink.finish();
  return 0;
}

int run_dump(const CommonFlags& common, const std::string& input_path) {
  const QState state = load_state(input_path);
  OutputSink sink(common.output);
  std::ostream& out = sink.stream();
  if (common.format == "table") {
    out << "state " << input_path << '\n'
        << "  kind  " << (state.is_pure() ? "pure" : "mixed") << '\n'
        << "  dims  ";
    for (std::size_t i = 0; i < state.dims().size(); ++i)
      out << (i ? "x" : "") << state.dims()[i];
    out << '\n';
    if (!state.is_pure()) out << "  rank  " << spectral(state).rank << '\n';
  } else {
    out << state_to_json(state).dump(2) << '\n';
  }
  sink.finish();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"entanglement-of-assistance bounds, oracles and monogamy campaigns"};
  app.require_subcommand(1);

  CLI::App* bounds_cmd = app.add_subcommand("bounds", "lower/upper bounds across the A|B cut");
  CommonFlags bounds_common;
  OptimizerFlags bounds_opt;
  StateSource bounds_source;
  int bounds_trace_out = -1;
  bounds_common.attach(bounds_cmd);
  bounds_opt.attach(bounds_cmd);
  bounds_source.attach(bounds_cmd);
  bounds_cmd->add_option("--trace-out", bounds_trace_out,
                         "subsystem to trace away (default: the last one)");

  CLI::App* tangle_cmd = app.add_subcommand("tangle", "decomposition-search assisted tangle");
  CommonFlags tangle_common;
  OracleFlags tangle_oracle_flags;
  StateSource tangle_source;
  int tangle_trace_out = -1;
  tangle_common.attach(tangle_cmd);
  tangle_oracle_flags.attach(tangle_cmd);
  tangle_source.attach(tangle_cmd);
  tangle_cmd->add_option("--trace-out", tangle_trace_out,
                         "subsystem to trace away (default: the last one)");

  CLI::App* monogamy_cmd = app.add_subcommand("monogamy", "pairwise-versus-bipartite campaigns");
  CommonFlags monogamy_common;
  OracleFlags monogamy_oracle;
  MonogamyCampaign campaign;
  monogamy_common.attach(monogamy_cmd);
  monogamy_oracle.attach(monogamy_cmd);
  campaign.attach(monogamy_cmd);

  CLI::App* channel_cmd = app.add_subcommand("channel", "two-qubit chain of bound inequalities");
  CommonFlags channel_common;
  OracleFlags channel_oracle;
  std::string channel_input;
  channel_common.attach(channel_cmd);
  channel_oracle.attach(channel_cmd);
  channel_cmd->add_option("state", channel_input, "two-qubit state file")->required();

  CLI::App* sample_cmd = app.add_subcommand("sample", "emit a random state file");
  CommonFlags sample_common;
  std::string sample_dims;
  bool sample_mixed = false;
  Index sample_rank = 1;
  sample_common.attach(sample_cmd);
  sample_cmd->add_option("--dims", sample_dims, "comma-separated subsystem dims")->required();
  sample_cmd->add_flag("--mixed", sample_mixed, "sample a mixed state");
  sample_cmd->add_option("--rank", sample_rank, "rank of the sampled mixed state");

  CLI::App* dump_cmd = app.add_subcommand("dump", "parse a state file and re-emit it");
  CommonFlags dump_common;
  std::string dump_input;
  dump_common.attach(dump_cmd);
  dump_cmd->add_option("state", dump_input, "state file")->required();

  try {
    app.parse(argc, argv);

    if (bounds_cmd->parsed()) {
      const json cfg = load_config(bounds_common.config_path);
      bounds_common.merge(cfg);
      bounds_opt.merge(cfg);
      return run_bounds(bounds_common, bounds_opt, bounds_source, bounds_trace_out);
    }
    if (tangle_cmd->parsed()) {
      const json cfg = load_config(tangle_common.config_path);
      tangle_common.merge(cfg);
      tangle_oracle_flags.merge(cfg);
      return run_tangle(tangle_common, tangle_oracle_flags, tangle_source, tangle_trace_out);
    }
    if (monogamy_cmd->parsed()) {
      const json cfg = load_config(monogamy_common.config_path);
      monogamy_common.merge(cfg);
      monogamy_oracle.merge(cfg);
      return run_monogamy(monogamy_common, monogamy_oracle, campaign);
    }
    if (channel_cmd->parsed()) {
      const json cfg = load_config(channel_common.config_path);
      channel_common.merge(cfg);
      channel_oracle.merge(cfg);
      return run_channel(channel_common, channel_oracle, channel_input);
    }
    if (sample_cmd->parsed()) {
      const json cfg = load_config(sample_common.config_path);
      sample_common.merge(cfg);
      return run_sample(sample_common, sample_dims, sample_mixed, sample_rank);
    }
    const json cfg = load_config(dump_common.config_path);
    dump_common.merge(cfg);
    return run_dump(dump_common, dump_input);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 3;
  }
}
