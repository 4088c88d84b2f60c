#include "vbroadcast/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "vbroadcast/axioms.hpp"
#include "vbroadcast/broadcast.hpp"
#include "vbroadcast/errors.hpp"
#include "vbroadcast/random.hpp"
#include "vbroadcast/sampling.hpp"
#include "vbroadcast/sdp.hpp"
#include "vbroadcast/serialize.hpp"

namespace vbroadcast {
namespace {

using Params = std::map<std::string, std::string>;

std::string utc_timestamp() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ", tm.tm_year + 1900,
                tm.tm_mon + 1, tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec);
  return buf;
}

/// Everything run-dependent but not content-bearing lives under "meta", so
/// artifacts from identical inputs are byte-identical outside this one key.
Json meta_for(const RunConfig& config) {
  return Json{{"command", config.command}, {"timestamp", utc_timestamp()}};
}

void require_keys(const Params& params, const std::vector<std::string>& allowed,
                  const std::string& command) {
  for (const auto& [key, value] : params) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw argument_error(command + ": unknown parameter '" + key + "'");
    }
  }
}

const std::string& require_param(const Params& params, const std::string& key,
                                 const std::string& command) {
  const auto it = params.find(key);
  if (it == params.end()) {
    throw argument_error(command + ": missing required parameter '" + key + "'");
  }
  return it->second;
}

long long parse_integer(const std::string& text, const std::string& what, long long lo,
                        long long hi) {
  long long value = 0;
  try {
    std::size_t pos = 0;
    value = std::stoll(text, &pos);
    if (pos != text.size()) throw std::invalid_argument("trailing characters");
  } catch (const std::exception&) {
    throw argument_error(what + ": expected an integer, got '" + text + "'");
  }
  if (value < lo || value > hi) {
    throw argument_error(what + ": value " + text + " out of range");
  }
  return value;
}

int parse_int(const std::string& text, const std::string& what) {
  return static_cast<int>(parse_integer(text, what, std::numeric_limits<int>::min(),
                                        std::numeric_limits<int>::max()));
}

std::uint64_t parse_u64(const std::string& text, const std::string& what) {
  try {
    std::size_t pos = 0;
    const unsigned long long value = std::stoull(text, &pos);
    if (pos != text.size()) throw std::invalid_argument("trailing characters");
    return value;
  } catch (const std::exception&) {
    throw argument_error(what + ": expected an unsigned integer, got '" + text + "'");
  }
}

double parse_double(const std::string& text, const std::string& what) {
  try {
    std::size_t pos = 0;
    const double value = std::stod(text, &pos);
    if (pos != text.size()) throw std::invalid_argument("trailing characters");
    if (!std::isfinite(value)) throw std::invalid_argument("not finite");
    return value;
  } catch (const std::exception&) {
    throw argument_error(what + ": expected a finite number, got '" + text + "'");
  }
}

std::vector<int> parse_int_list(const std::string& text, const std::string& what) {
  std::vector<int> values;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    values.push_back(parse_int(item, what));
  }
  if (values.empty()) throw argument_error(what + ": expected a comma-separated integer list");
  return values;
}

std::filesystem::path resolve_out(const RunConfig& config, const std::string& command) {
  if (!config.output_path.empty()) return config.output_path;
  const auto it = config.parameters.find("out");
  if (it != config.parameters.end() && !it->second.empty()) return it->second;
  throw argument_error(command + ": missing required parameter 'out'");
}

int json_int(const Json& obj, const std::string& key, const std::string& context) {
  if (!obj.contains(key)) throw argument_error(context + ": missing key '" + key + "'");
  if (!obj.at(key).is_number_integer()) {
    throw argument_error(context + ": key '" + key + "' must be an integer");
  }
  return obj.at(key).get<int>();
}

double json_double(const Json& obj, const std::string& key, const std::string& context) {
  if (!obj.contains(key)) throw argument_error(context + ": missing key '" + key + "'");
  if (!obj.at(key).is_number()) {
    throw argument_error(context + ": key '" + key + "' must be a number");
  }
  return obj.at(key).get<double>();
}

Json axiom_report_json(const AxiomReport& r) {
  Json j;
  j["map_id"] = r.map_id;
  j["all_pass"] = r.all_pass;
  j["residuals"] = Json{{"uc", r.uc_residual},       {"pi", r.pi_residual},
                        {"cc", r.cc_residual},       {"marginal", r.marginal_residual},
                        {"hp", r.hp_residual},       {"tp", r.tp_residual}};
  j["pass"] = Json{{"uc", r.uc_pass},       {"pi", r.pi_pass},
                   {"cc", r.cc_pass},       {"marginal", r.marginal_pass},
                   {"hp", r.hp_pass},       {"tp", r.tp_pass}};
  j["witnesses"] = Json{{"uc", r.uc_witness},
                        {"pi", r.pi_witness},
                        {"cc", r.cc_witness},
                        {"marginal", r.marginal_witness}};
  j["twirl_residual"] = r.twirl_residual;
  j["config"] = Json{{"map_id", r.config.map_id},
                     {"n_unitaries", r.config.n_unitaries},
                     {"n_states", r.config.n_states},
                     {"seed", r.config.seed},
                     {"tol_uc", r.config.tol_uc},
                     {"tol_pi", r.config.tol_pi},
                     {"tol_cc", r.config.tol_cc},
                     {"tol_marginal", r.config.tol_marginal},
                     {"tol_hp", r.config.tol_hp},
                     {"tol_tp", r.config.tol_tp}};
  return j;
}

Json experiment_json(const ExperimentReport& report) {
  Json receivers = Json::array();
  for (const auto& r : report.receivers) {
    receivers.push_back(Json{{"n", r.n},
                             {"estimate", r.estimate},
                             {"estimate_std", r.estimate_std},
                             {"true_value", r.true_value},
                             {"abs_error", r.abs_error},
                             {"within_epsilon", r.within_epsilon},
                             {"failures", r.failures},
                             {"empirical_failure_rate", r.empirical_failure_rate},
                             {"shot_variance", r.shot_variance}});
  }
  return Json{{"protocol", report.protocol},
              {"shots_used", report.shots_used},
              {"seed", report.seed},
              {"repetitions", report.repetitions},
              {"receivers", receivers}};
}

std::string overhead_csv(const std::vector<OverheadRow>& rows) {
  std::string csv = "d,N,u,u_squared,a,b,gap,iterations,status\n";
  for (const auto& row : rows) {
    csv += std::to_string(row.d) + "," + std::to_string(row.N) + "," + format_sig17(row.u) +
           "," + format_sig17(row.u_squared) + "," + format_sig17(row.a) + "," +
           format_sig17(row.b) + "," + format_sig17(row.gap) + "," +
           std::to_string(row.iterations) + "," + row.status + "\n";
  }
  return csv;
}

std::string figure_csv(const FigureData& panel) {
  std::string csv = "x,blue,red\n";
  for (std::size_t i = 0; i < panel.x.size(); ++i) {
    csv += format_sig17(panel.x[i]) + "," + format_sig17(panel.blue[i]) + "," +
           format_sig17(panel.red[i]) + "\n";
  }
  return csv;
}

void append_summary_rows(std::string& csv, const ExperimentReport& report) {
  for (std::size_t i = 0; i < report.receivers.size(); ++i) {
    const auto& r = report.receivers[i];
    csv += report.protocol + "," + std::to_string(i) + "," + std::to_string(r.n) + "," +
           format_sig17(r.estimate) + "," + format_sig17(r.true_value) + "," +
           format_sig17(r.abs_error) + "," + std::to_string(r.failures) + "," +
           std::to_string(report.repetitions) + "\n";
  }
}

std::filesystem::path summary_csv_path(const std::filesystem::path& out) {
  std::filesystem::path p = out;
  if (p.extension() == ".json") {
    p.replace_extension(".csv");
  } else {
    p += ".csv";
  }
  return p;
}

DensityMatrix density_from_json(const Json& j, int d, const std::string& context) {
  Operator op = matrix_from_json(j);
  if (op.dim() != d) {
    throw argument_error(context + ": state dimension " + std::to_string(op.dim()) +
                         " does not match d = " + std::to_string(d));
  }
  try {
    return DensityMatrix(Operator(SubsystemShape::single(d), op.matrix()));
  } catch (const contract_violation& e) {
    throw argument_error(context + ": not a valid density matrix: " + e.what());
  }
}

Observable observable_from_json(const Json& j, int d, const std::string& context) {
  if (j.is_string()) {
    const std::string name = j.get<std::string>();
    if (d != 2) {
      throw argument_error(context + ": named observable '" + name + "' requires d = 2");
    }
    if (name == "X") return Observable::from_operator(pauli_x());
    if (name == "Y") return Observable::from_operator(pauli_y());
    if (name == "Z") return Observable::from_operator(pauli_z());
    throw argument_error(context + ": unknown observable '" + name +
                         "' (expected X, Y, Z, or a matrix object)");
  }
  if (j.is_object()) {
    Operator op = matrix_from_json(j);
    if (op.dim() != d) {
      throw argument_error(context + ": observable dimension " + std::to_string(op.dim()) +
                           " does not match d = " + std::to_string(d));
    }
    try {
      return Observable::from_operator(Operator(SubsystemShape::single(d), op.matrix()));
    } catch (const contract_violation& e) {
      throw argument_error(context + ": observable must be Hermitian: " + e.what());
    }
  }
  throw argument_error(context + ": observable must be a string or a matrix object");
}

void print_error(const std::string& type, const std::string& message, int status) {
  const Json j{{"error", Json{{"type", type}, {"message", message}}}, {"exit", status}};
  std::cerr << j.dump() << "\n";
}

// ---- commands ----------------------------------------------------------------

void cmd_choi(const RunConfig& config) {
  require_keys(config.parameters, {"d", "N", "out"}, "choi");
  const int d = parse_int(require_param(config.parameters, "d", "choi"), "choi --d");
  const int n = parse_int(require_param(config.parameters, "N", "choi"), "choi --N");
  const std::filesystem::path out = resolve_out(config, "choi");

  const ChoiOperator choi = choi_canonical(d, n);
  Json j = choi_to_json(choi);
  j["meta"] = meta_for(config);
  atomic_write(out, j.dump(2) + "\n");
  std::cout << "choi: d=" << d << " N=" << n << " side=" << choi.matrix.dim() << " -> "
            << out.string() << "\n";
}

void cmd_verify(const RunConfig& config) {
  require_keys(config.parameters, {"d", "N", "unitaries", "tol", "seed"}, "verify");
  const int d = parse_int(require_param(config.parameters, "d", "verify"), "verify --d");
  const int n = parse_int(require_param(config.parameters, "N", "verify"), "verify --N");

  AxiomCheckConfig check;
  check.seed = config.seed;
  if (const auto it = config.parameters.find("unitaries"); it != config.parameters.end()) {
    check.n_unitaries = parse_int(it->second, "verify --unitaries");
  }
  if (const auto it = config.parameters.find("tol"); it != config.parameters.end()) {
    const double tol = parse_double(it->second, "verify --tol");
    check.tol_uc = check.tol_pi = check.tol_cc = tol;
    check.tol_marginal = check.tol_hp = check.tol_tp = tol;
  }

  const ChoiOperator choi = choi_canonical(d, n);
  const AxiomReport report = verify_all(choi, check);
  Json j = axiom_report_json(report);
  j["d"] = d;
  j["N"] = n;
  std::cout << j.dump(2) << "\n";
}

void cmd_overhead(const RunConfig& config) {
  require_keys(config.parameters, {"d", "N", "tol", "max_iter", "out"}, "overhead");
  const std::vector<int> ds =
      parse_int_list(require_param(config.parameters, "d", "overhead"), "overhead --d");
  const std::vector<int> ns =
      parse_int_list(require_param(config.parameters, "N", "overhead"), "overhead --N");
  const std::filesystem::path out = resolve_out(config, "overhead");

  double tol = 1e-7;
  long max_iter = 200000;
  if (const auto it = config.parameters.find("tol"); it != config.parameters.end()) {
    tol = parse_double(it->second, "overhead --tol");
  }
  if (const auto it = config.parameters.find("max_iter"); it != config.parameters.end()) {
    max_iter = static_cast<long>(
        parse_integer(it->second, "overhead --max-iter", 1, std::numeric_limits<long>::max()));
  }

  std::vector<std::pair<int, int>> entries;
  for (const int d : ds) {
    for (const int n : ns) entries.emplace_back(d, n);
  }
  const std::vector<OverheadRow> rows = overhead_curve(entries, tol, max_iter);
  atomic_write(out, overhead_csv(rows));

  const long certified =
      std::count_if(rows.begin(), rows.end(),
                    [](const OverheadRow& row) { return row.status == "certified"; });
  std::cout << "overhead: " << rows.size() << " rows (" << certified << " certified) -> "
            << out.string() << "\n";
  for (const auto& row : rows) {
    if (row.status.rfind("capability: ", 0) == 0) {
      throw capability_error("overhead: d=" + std::to_string(row.d) + " N=" +
                             std::to_string(row.N) + ": " + row.status.substr(12));
    }
  }
  if (certified != static_cast<long>(rows.size())) {
    throw convergence_error("overhead: " + std::to_string(rows.size() - certified) +
                            " of " + std::to_string(rows.size()) +
                            " rows are not certified; see " + out.string());
  }
}

void cmd_simulate(const RunConfig& config) {
  require_keys(config.parameters, {"config", "seed", "out"}, "simulate");
  const std::filesystem::path scenario_path =
      require_param(config.parameters, "config", "simulate");
  const std::filesystem::path out = resolve_out(config, "simulate");

  Json scenario;
  try {
    scenario = Json::parse(read_file(scenario_path));
  } catch (const Json::parse_error& e) {
    throw argument_error("simulate: scenario file is not valid JSON: " + std::string(e.what()));
  }
  if (!scenario.is_object()) throw argument_error("simulate: scenario must be a JSON object");
  reject_unknown_keys(scenario, {"d", "N", "state", "receivers", "repetitions", "seed"},
                      "simulate scenario");

  const int d = json_int(scenario, "d", "simulate scenario");
  const int n = json_int(scenario, "N", "simulate scenario");
  const int repetitions =
      scenario.contains("repetitions") ? json_int(scenario, "repetitions", "simulate scenario") : 1;
  if (repetitions < 1) throw argument_error("simulate scenario: repetitions must be >= 1");

  std::uint64_t seed = 0;
  if (scenario.contains("seed")) {
    if (!scenario.at("seed").is_number_unsigned() && !scenario.at("seed").is_number_integer()) {
      throw argument_error("simulate scenario: key 'seed' must be a non-negative integer");
    }
    seed = scenario.at("seed").get<std::uint64_t>();
  }
  // A --seed flag takes precedence over the scenario's own seed.
  if (const auto it = config.parameters.find("seed"); it != config.parameters.end()) {
    seed = parse_u64(it->second, "simulate --seed");
  }

  if (!scenario.contains("state")) throw argument_error("simulate scenario: missing key 'state'");
  std::string state_source;
  std::uint64_t state_seed = 0;
  DensityMatrix rho = [&]() -> DensityMatrix {
    const Json& state = scenario.at("state");
    if (state.is_string()) {
      if (state.get<std::string>() != "ginibre") {
        throw argument_error("simulate scenario: state string must be 'ginibre'");
      }
      state_source = "ginibre";
      state_seed = derive_seed(seed, 0);
      return ginibre_state(d, state_seed);
    }
    if (state.is_object()) {
      state_source = "matrix";
      return density_from_json(state, d, "simulate scenario");
    }
    throw argument_error("simulate scenario: state must be 'ginibre' or a matrix object");
  }();

  if (!scenario.contains("receivers") || !scenario.at("receivers").is_array() ||
      scenario.at("receivers").empty()) {
    throw argument_error("simulate scenario: 'receivers' must be a non-empty array");
  }
  const Json& receivers_json = scenario.at("receivers");
  if (static_cast<int>(receivers_json.size()) != n) {
    throw argument_error("simulate scenario: got " + std::to_string(receivers_json.size()) +
                         " receivers for N = " + std::to_string(n));
  }
  std::vector<ReceiverSpec> receivers;
  Json receivers_echo = Json::array();
  for (std::size_t i = 0; i < receivers_json.size(); ++i) {
    const Json& r = receivers_json[i];
    const std::string context = "simulate scenario receiver " + std::to_string(i);
    if (!r.is_object()) throw argument_error(context + ": must be an object");
    reject_unknown_keys(r, {"observable", "epsilon", "delta"}, context);
    if (!r.contains("observable")) throw argument_error(context + ": missing key 'observable'");
    ReceiverSpec spec{observable_from_json(r.at("observable"), d, context),
                      json_double(r, "epsilon", context), json_double(r, "delta", context)};
    receivers.push_back(spec);
    receivers_echo.push_back(Json{
        {"observable", r.at("observable").is_string() ? r.at("observable") : Json("matrix")},
        {"epsilon", spec.epsilon},
        {"delta", spec.delta}});
  }

  const SdpProblem problem = build_sdp(d, n);
  const SdpSolution solution = solve(problem);
  const SdpCertificate cert = certify(solution, problem);
  if (solution.status != SdpStatus::converged || !cert.valid) {
    throw convergence_error("simulate: overhead solve for d=" + std::to_string(d) +
                            " N=" + std::to_string(n) +
                            " did not certify (status=" + to_string(solution.status) +
                            ", gap=" + format_sig17(cert.gap) + ")");
  }
  const QuasiDecomposition decomp = extract_decomposition(solution);
  const SamplingPlan plan = make_plan(receivers, solution.u);
  const ProtocolComparison comparison = compare_protocols(rho, decomp, plan, seed, repetitions);

  Json plan_json{{"n_i", plan.n_i}, {"n_naive", plan.n_naive},
                 {"n_q", plan.n_q}, {"n_v", plan.n_v},
                 {"u", plan.u}};
  Json report{{"scenario", Json{{"d", d},
                                {"N", n},
                                {"repetitions", repetitions},
                                {"seed", seed},
                                {"state", state_source},
                                {"state_seed", state_seed},
                                {"receivers", receivers_echo}}},
              {"overhead", Json{{"u", solution.u},
                                {"a", solution.a},
                                {"b", solution.b},
                                {"gap", cert.gap},
                                {"iterations", solution.iterations},
                                {"status", "certified"}}},
              {"plan", plan_json},
              {"naive", experiment_json(comparison.naive_report)},
              {"virtual", experiment_json(comparison.virtual_report)},
              {"cost_ratio", comparison.cost_ratio}};
  report["meta"] = meta_for(config);
  atomic_write(out, report.dump(2) + "\n");

  std::string csv = "protocol,receiver,n,estimate,true,abs_error,failures,repetitions\n";
  append_summary_rows(csv, comparison.naive_report);
  append_summary_rows(csv, comparison.virtual_report);
  const std::filesystem::path csv_path = summary_csv_path(out);
  atomic_write(csv_path, csv);

  std::cout << "simulate: d=" << d << " N=" << n << " u=" << solution.u
            << " n_naive=" << plan.n_naive << " n_virtual=" << plan.n_v << " -> " << out.string()
            << ", " << csv_path.string() << "\n";
}

void cmd_pdo(const RunConfig& config) {
  require_keys(config.parameters, {"d", "N", "state", "seed", "state_file", "out"}, "pdo");
  const int d = parse_int(require_param(config.parameters, "d", "pdo"), "pdo --d");
  const int n = parse_int(require_param(config.parameters, "N", "pdo"), "pdo --N");
  const std::filesystem::path out = resolve_out(config, "pdo");

  const bool has_state = config.parameters.count("state") > 0;
  const bool has_file = config.parameters.count("state_file") > 0;
  if (has_state == has_file) {
    throw argument_error("pdo: exactly one of --state or --state-file is required");
  }

  std::string state_source;
  std::uint64_t state_seed = 0;
  DensityMatrix rho = [&]() -> DensityMatrix {
    if (has_state) {
      if (config.parameters.at("state") != "ginibre") {
        throw argument_error("pdo: --state only supports 'ginibre'");
      }
      state_source = "ginibre";
      state_seed = config.seed;
      return ginibre_state(d, state_seed);
    }
    state_source = "file";
    Json j;
    try {
      j = Json::parse(read_file(config.parameters.at("state_file")));
    } catch (const Json::parse_error& e) {
      throw argument_error("pdo: state file is not valid JSON: " + std::string(e.what()));
    }
    return density_from_json(j, d, "pdo state file");
  }();

  PdoComparison cmp = pdo_compare(rho, n);
  cmp.state_seed = state_seed;

  Json j{{"d", d},
         {"N", n},
         {"n_points", cmp.n_points},
         {"frob_distance", cmp.frob_distance},
         {"trace_distance_surrogate", cmp.trace_distance_surrogate},
         {"state_seed", cmp.state_seed},
         {"state_source", state_source}};
  j["meta"] = meta_for(config);
  atomic_write(out, j.dump(2) + "\n");
  std::cout << "pdo: d=" << d << " N=" << n << " frob=" << cmp.frob_distance
            << " surrogate=" << cmp.trace_distance_surrogate << " -> " << out.string() << "\n";
}

void cmd_figure2(const RunConfig& config) {
  require_keys(config.parameters, {"out_a", "out_b"}, "figure2");
  const std::filesystem::path out_a = require_param(config.parameters, "out_a", "figure2");
  const std::filesystem::path out_b = require_param(config.parameters, "out_b", "figure2");

  const auto [panel_a, panel_b] = emit_figure2({2, 3, 4, 5, 6}, {2, 3, 4, 5}, 1e-7);
  atomic_write(out_a, figure_csv(panel_a));
  atomic_write(out_b, figure_csv(panel_b));
  std::cout << "figure2: panel a " << panel_a.x.size() << " points -> " << out_a.string()
            << ", panel b " << panel_b.x.size() << " points -> " << out_b.string() << "\n";
}

}  // namespace

void run(const RunConfig& config) {
  if (config.command == "choi") {
    cmd_choi(config);
  } else if (config.command == "verify") {
    cmd_verify(config);
  } else if (config.command == "overhead") {
    cmd_overhead(config);
  } else if (config.command == "simulate") {
    cmd_simulate(config);
  } else if (config.command == "pdo") {
    cmd_pdo(config);
  } else if (config.command == "figure2") {
    cmd_figure2(config);
  } else {
    throw argument_error("unknown command '" + config.command + "'");
  }
}

int run_with_status(const RunConfig& config) {
  try {
    run(config);
    return kExitOk;
  } catch (const argument_error& e) {
    print_error("usage", e.what(), kExitUsage);
    return kExitUsage;
  } catch (const capability_error& e) {
    print_error("capability", e.what(), kExitCapability);
    return kExitCapability;
  } catch (const convergence_error& e) {
    print_error("non_convergence", e.what(), kExitNoConvergence);
    return kExitNoConvergence;
  } catch (const std::exception& e) {
    print_error("internal", e.what(), kExitInternal);
    return kExitInternal;
  }
}

std::pair<FigureData, FigureData> emit_figure2(const std::vector<int>& d_range,
                                               const std::vector<int>& n_range, double tol) {
  const auto certified_u = [tol](int d, int n, const std::string& panel) {
    const SdpProblem problem = build_sdp(d, n);
    const SdpSolution solution = solve(problem, tol);
    const SdpCertificate cert = certify(solution, problem);
    if (solution.status != SdpStatus::converged || !cert.valid) {
      throw convergence_error("figure2 panel " + panel + ": solve for d=" + std::to_string(d) +
                              " N=" + std::to_string(n) +
                              " did not certify (status=" + to_string(solution.status) +
                              ", gap=" + format_sig17(cert.gap) + ")");
    }
    return solution.u;
  };

  FigureData a{"a", {}, {}, {}};
  for (const int d : d_range) {
    const double u = certified_u(d, 2, "a");
    // The two-receiver overhead is the input dimension itself.
    if (std::abs(u - d) > 2e-4) {
      throw convergence_error("figure2 panel a: u(" + std::to_string(d) + ") = " +
                              format_sig17(u) + " deviates from " + std::to_string(d));
    }
    a.x.push_back(static_cast<double>(d));
    a.blue.push_back(u * u);
    a.red.push_back(2.0);
  }

  FigureData b{"b", {}, {}, {}};
  for (const int n : n_range) {
    const double u = certified_u(2, n, "b");
    b.x.push_back(static_cast<double>(n));
    b.blue.push_back(u * u);
    b.red.push_back(static_cast<double>(n));
  }
  return {a, b};
}

}  // namespace vbroadcast
