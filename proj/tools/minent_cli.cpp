#include <cctype>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "minent/entropies.hpp"
#include "minent/harness.hpp"
#include "minent/io.hpp"
#include "minent/metrics.hpp"
#include "minent/sdp.hpp"
#include "minent/smoothing.hpp"
#include "minent/spectrum.hpp"
#include "minent/state.hpp"
#include "minent/typeclass.hpp"

namespace {

using minent::CMat;
using minent::RVec;

constexpr int kDigits = 12;

std::string num(double x) { return minent::fmt_g(x, kDigits); }

std::vector<int> parse_dims(const std::string& spec) {
  std::vector<int> dims;
  std::stringstream ss(spec);
  std::string part;
  while (std::getline(ss, part, 'x')) {
    if (part.empty()) throw std::invalid_argument("bad dims: " + spec);
    dims.push_back(std::stoi(part));
    if (dims.back() < 1) throw std::invalid_argument("bad dims: " + spec);
  }
  if (dims.empty()) throw std::invalid_argument("bad dims: " + spec);
  return dims;
}

std::vector<double> parse_spectrum(const std::string& spec) {
  std::vector<double> vals;
  std::stringstream ss(spec);
  std::string part;
  while (std::getline(ss, part, ',')) {
    if (part.empty()) throw std::invalid_argument("bad spectrum: " + spec);
    vals.push_back(std::stod(part));
  }
  if (vals.empty()) throw std::invalid_argument("bad spectrum: " + spec);
  return vals;
}

struct Split {
  int d_left = 1;
  int d_right = 1;
  std::vector<int> right_idx;
};

// "A:BC" splits by letter count, "2:2x2" by explicit dimensions; the left
// block must be a prefix of the state's subsystem list.
Split parse_split(const std::string& spec, const std::vector<int>& dims) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos || colon == 0 || colon + 1 == spec.size()) {
    throw std::invalid_argument("split must look like A:B or 2:2x2");
  }
  const std::string left = spec.substr(0, colon);
  const std::string right = spec.substr(colon + 1);
  const bool letters = std::isalpha(static_cast<unsigned char>(left[0])) != 0;
  size_t k = 0;
  if (letters) {
    for (char ch : left + right) {
      if (!std::isalpha(static_cast<unsigned char>(ch))) {
        throw std::invalid_argument("split mixes letters and digits: " + spec);
      }
    }
    k = left.size();
    if (left.size() + right.size() != dims.size()) {
      throw std::invalid_argument("split names " +
                                  std::to_string(left.size() + right.size()) +
                                  " subsystems, state has " +
                                  std::to_string(dims.size()));
    }
  } else {
    const std::vector<int> ld = parse_dims(left);
    const std::vector<int> rd = parse_dims(right);
    if (ld.size() + rd.size() != dims.size()) {
      throw std::invalid_argument("split does not match state dimensions");
    }
    for (size_t i = 0; i < ld.size(); ++i) {
      if (ld[i] != dims[i]) {
        throw std::invalid_argument("split does not match state dimensions");
      }
    }
    for (size_t i = 0; i < rd.size(); ++i) {
      if (rd[i] != dims[ld.size() + i]) {
        throw std::invalid_argument("split does not match state dimensions");
      }
    }
    k = ld.size();
  }
  Split s;
  for (size_t i = 0; i < dims.size(); ++i) {
    if (i < k) {
      s.d_left *= dims[i];
    } else {
      s.d_right *= dims[i];
      s.right_idx.push_back(static_cast<int>(i));
    }
  }
  return s;
}

minent::StateFile load_state(const std::string& path) {
  return minent::matrix_from_json(minent::read_text_file(path));
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
  } else {
    minent::write_text_file(out_path, text);
  }
}

int cmd_compute(const std::string& state_path, const std::string& measure,
                bool conditional, const std::string& split_spec, double alpha,
                const std::string& sigma_path) {
  const minent::StateFile sf = load_state(state_path);
  double value = 0.0;
  if (measure == "vn") {
    if (conditional) {
      if (split_spec.empty()) {
        throw std::invalid_argument("--conditional needs --split");
      }
      const Split sp = parse_split(split_spec, sf.dims);
      value = minent::conditional_vn(sf.matrix, sf.dims, sp.right_idx);
    } else {
      value = minent::von_neumann(sf.matrix);
    }
  } else if (measure == "relative") {
    if (sigma_path.empty()) {
      throw std::invalid_argument("--measure relative needs --sigma");
    }
    value = minent::relative_entropy(sf.matrix, load_state(sigma_path).matrix);
  } else if (measure == "renyi") {
    if (!(alpha > 0.0)) {
      throw std::invalid_argument("--measure renyi needs --alpha > 0");
    }
    value = minent::renyi_alpha(sf.matrix, alpha);
  } else if (measure == "h0") {
    value = minent::h0(sf.matrix);
  } else if (measure == "hmin") {
    value = minent::hmin(sf.matrix);
  } else {
    throw std::invalid_argument("unknown measure: " + measure);
  }
  std::cout << num(value) << "\n";
  return 0;
}

int cmd_distance(const std::string& state_path, const std::string& sigma_path,
                 const std::string& metric) {
  const minent::StateFile a = load_state(state_path);
  const minent::StateFile b = load_state(sigma_path);
  const auto print_one = [&](const std::string& name) {
    double v = 0.0;
    if (name == "trace") {
      v = minent::trace_distance(a.matrix, b.matrix);
    } else if (name == "fidelity") {
      v = minent::fidelity(a.matrix, b.matrix).value;
    } else if (name == "purified") {
      v = minent::purified_distance(a.matrix, b.matrix).value;
    } else {
      throw std::invalid_argument("unknown metric: " + name);
    }
    return v;
  };
  if (!metric.empty()) {
    std::cout << num(print_one(metric)) << "\n";
    return 0;
  }
  std::cout << "trace = " << num(print_one("trace")) << "\n";
  std::cout << "fidelity = " << num(print_one("fidelity")) << "\n";
  std::cout << "purified = " << num(print_one("purified")) << "\n";
  return 0;
}

int cmd_hmin(const std::string& state_path, const std::string& split_spec,
             const std::string& witness_path) {
  const minent::StateFile sf = load_state(state_path);
  const Split sp = parse_split(split_spec, sf.dims);
  const minent::HminResult hr =
      minent::hmin_conditional(sf.matrix, sp.d_left, sp.d_right);
  if (!witness_path.empty()) {
    const char* status = "infeasible_numerics";
    if (hr.witness.status == minent::SdpStatus::optimal) status = "optimal";
    if (hr.witness.status == minent::SdpStatus::max_iter) status = "max_iter";
    nlohmann::ordered_json w;
    w["value"] = hr.value;
    w["optimal_trace"] = hr.witness.optimal_value;
    w["gap"] = hr.witness.gap;
    w["status"] = status;
    w["sigma_b"] = nlohmann::ordered_json::parse(
        minent::matrix_to_json(hr.witness.sigma_b, {sp.d_right}));
    w["dual_certificate"] = nlohmann::ordered_json::parse(
        minent::matrix_to_json(hr.witness.dual_certificate,
                               {sp.d_left, sp.d_right}));
    minent::write_text_file(witness_path, w.dump(2) + "\n");
  }
  std::cout << num(hr.value) << "\n";
  return 0;
}

int cmd_smooth(const std::string& state_path, double eps,
               const std::string& measure, bool conditional,
               const std::string& split_spec) {
  const minent::StateFile sf = load_state(state_path);
  if (conditional) {
    if (measure != "hmin") {
      throw std::invalid_argument("conditional smoothing supports hmin only");
    }
    if (split_spec.empty()) {
      throw std::invalid_argument("--conditional needs --split");
    }
    const Split sp = parse_split(split_spec, sf.dims);
    const minent::ConditionalHminBounds b = minent::smooth_hmin_conditional_bounds(
        sf.matrix, sp.d_left, sp.d_right, eps);
    std::cout << "lower = " << num(b.lower) << "\n";
    std::cout << "upper = " << num(b.upper) << "\n";
    std::cout << "exact0 = " << num(b.exact0) << "\n";
    return 0;
  }
  const minent::Spectrum s = minent::spectrum_of(sf.matrix);
  double value = 0.0;
  if (measure == "hmin") {
    value = minent::smooth_hmin_unconditional(s, eps);
  } else if (measure == "h0") {
    value = minent::smooth_h0(s, eps);
  } else {
    throw std::invalid_argument("unknown smooth measure: " + measure);
  }
  std::cout << num(value) << "\n";
  return 0;
}

int cmd_qaep(const std::string& spectrum_spec, double eps, long n_max,
             long step, const std::string& out_path) {
  if (n_max < 1) throw std::invalid_argument("--n-max must be positive");
  if (step < 1) throw std::invalid_argument("--step must be positive");
  const std::vector<double> vals = parse_spectrum(spectrum_spec);
  const minent::Spectrum base = minent::Spectrum::from_values(vals);
  RVec rv(static_cast<long>(vals.size()));
  for (size_t i = 0; i < vals.size(); ++i) rv(static_cast<long>(i)) = vals[i];
  const double vn_target = minent::shannon(rv);
  std::string csv = "n,epsilon,hmin_rate,h0_rate,vn_target,gap\n";
  for (long n = step; n <= n_max; n += step) {
    const minent::TypeClassSpectrum tps = minent::tensor_power_spectrum(base, n);
    const double hmin_rate =
        minent::iid_smooth_hmin(tps, eps) / static_cast<double>(n);
    const double h0_rate =
        minent::iid_smooth_h0(tps, eps) / static_cast<double>(n);
    csv += std::to_string(n) + "," + num(eps) + "," + num(hmin_rate) + "," +
           num(h0_rate) + "," + num(vn_target) + "," +
           num(h0_rate - hmin_rate) + "\n";
  }
  emit(csv, out_path);
  return 0;
}

int cmd_verify(const std::string& config_path, const std::string& out_dir,
               const std::vector<std::string>& check_ids, long trials,
               uint64_t seed, bool seed_set) {
  if (!config_path.empty() && !check_ids.empty()) {
    throw std::invalid_argument("--config and --check are mutually exclusive");
  }
  std::string config_text;
  if (!config_path.empty()) {
    config_text = minent::read_text_file(config_path);
  } else if (!check_ids.empty() || trials > 0 || seed_set) {
    nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
    std::vector<std::string> ids = check_ids;
    if (ids.empty()) {
      for (const auto& info : minent::registered_checks()) ids.push_back(info.id);
    }
    for (const auto& id : ids) {
      nlohmann::ordered_json item = nlohmann::ordered_json::object();
      if (trials > 0) item["trials"] = trials;
      if (seed_set) item["seed"] = seed;
      cfg[id] = std::move(item);
    }
    config_text = cfg.dump();
  }
  const minent::SuiteResult res = minent::run_suite(config_text, out_dir);
  if (!res.warning.empty()) std::cout << "warning: " << res.warning << "\n";
  for (const auto& rep : res.reports) {
    std::cout << rep.check_id << ": rows=" << rep.rows
              << " failures=" << rep.failures
              << " min_slack=" << num(rep.min_slack)
              << (rep.bound_mode ? " [bound mode]" : "") << "\n";
  }
  std::cout << "total: rows=" << res.total_rows
            << " failures=" << res.total_failures
            << " exit=" << res.exit_code << "\n";
  std::cout << "report: " << out_dir << "/report.csv\n";
  std::cout << "summary: " << out_dir << "/summary.json\n";
  return res.exit_code;
}

int cmd_random(const std::string& dims_spec, int rank, uint64_t seed,
               const std::string& out_path) {
  const std::vector<int> dims = parse_dims(dims_spec);
  const int full = static_cast<int>(minent::total_dim(dims));
  const int r = rank > 0 ? rank : full;
  const CMat rho = minent::random_density(dims, r, seed);
  emit(minent::matrix_to_json(rho, dims), out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-dimensional entropy and smoothing toolkit"};
  app.require_subcommand(1);

  std::string state_path, sigma_path, split_spec, measure, metric;
  std::string witness_path, out_path, config_path, spectrum_spec, dims_spec;
  std::string verify_out_dir = "verify_out";
  std::vector<std::string> check_ids;
  bool conditional = false;
  double alpha = -1.0, eps = 0.0;
  long n_max = 1000, step = 100, trials = 0;
  int rank = 0;
  uint64_t seed = 1;

  auto* compute = app.add_subcommand("compute", "entropy of a stored state");
  compute->add_option("--state", state_path, "state JSON file")->required();
  compute->add_option("--measure", measure, "vn, relative, renyi, h0, or hmin")
      ->required();
  compute->add_flag("--conditional", conditional,
                    "condition on the systems right of the split");
  compute->add_option("--split", split_spec, "bipartition, e.g. A:BC or 2:2x2");
  compute->add_option("--alpha", alpha, "Renyi order (measure renyi)");
  compute->add_option("--sigma", sigma_path,
                      "second state JSON file (measure relative)");

  auto* distance = app.add_subcommand("distance", "distance between two states");
  distance->add_option("--state", state_path, "state JSON file")->required();
  distance->add_option("--sigma", sigma_path, "second state JSON file")->required();
  distance->add_option("--metric", metric,
                       "trace, fidelity, or purified; omit to print all three");

  auto* hmin = app.add_subcommand("hmin", "conditional min-entropy via SDP");
  hmin->add_option("--state", state_path, "state JSON file")->required();
  hmin->add_option("--split", split_spec, "bipartition, e.g. A:B or 2:2")
      ->required();
  hmin->add_option("--witness", witness_path,
                   "write the optimizer and dual certificate to this JSON file");

  auto* smooth = app.add_subcommand("smooth", "smoothed entropies");
  smooth->add_option("--state", state_path, "state JSON file")->required();
  smooth->add_option("--epsilon", eps, "smoothing parameter in (0, 1)")->required();
  smooth->add_option("--measure", measure, "hmin or h0")->required();
  smooth->add_flag("--conditional", conditional,
                   "conditional bounds instead of the unconditional value");
  smooth->add_option("--split", split_spec, "bipartition (with --conditional)");

  auto* qaep = app.add_subcommand("qaep", "entropy rates of tensor powers");
  qaep->add_option("--spectrum", spectrum_spec,
                   "base eigenvalues, e.g. 0.75,0.25")->required();
  qaep->add_option("--epsilon", eps, "smoothing parameter in (0, 1)")->required();
  qaep->add_option("--n-max", n_max, "largest tensor power")->required();
  qaep->add_option("--step", step, "power increment between rows");
  qaep->add_option("--out", out_path, "write the CSV here instead of stdout");

  auto* verify = app.add_subcommand("verify", "run the verification suite");
  verify->add_option("--config", config_path,
                     "JSON file mapping check ids to parameter overrides");
  verify->add_option("--out", verify_out_dir,
                     "directory for report.csv and summary.json");
  verify->add_option("--check", check_ids, "run only these checks (repeatable)");
  verify->add_option("--trials", trials, "override the trial count");
  auto* seed_opt = verify->add_option("--seed", seed, "override the master seed");

  auto* random = app.add_subcommand("random", "sample a random density matrix");
  random->add_option("--dims", dims_spec, "subsystem dimensions, e.g. 2x2")
      ->required();
  random->add_option("--rank", rank, "rank of the sampled state (default full)");
  random->add_option("--seed", seed, "sampling seed");
  random->add_option("--out", out_path, "write the state here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (compute->parsed()) {
      return cmd_compute(state_path, measure, conditional, split_spec, alpha,
                         sigma_path);
    }
    if (distance->parsed()) return cmd_distance(state_path, sigma_path, metric);
    if (hmin->parsed()) return cmd_hmin(state_path, split_spec, witness_path);
    if (smooth->parsed()) {
      return cmd_smooth(state_path, eps, measure, conditional, split_spec);
    }
    if (qaep->parsed()) return cmd_qaep(spectrum_spec, eps, n_max, step, out_path);
    if (verify->parsed()) {
      return cmd_verify(config_path, verify_out_dir, check_ids, trials, seed,
                        seed_opt->count() > 0);
    }
    if (random->parsed()) return cmd_random(dims_spec, rank, seed, out_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
