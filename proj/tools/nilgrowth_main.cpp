#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "nilgrowth/growth_ideal.hpp"
#include "nilgrowth/run.hpp"
#include "nilgrowth/schedule.hpp"
#include "nilgrowth/verify.hpp"

namespace {

using nlohmann::ordered_json;
using namespace nilgrowth;

ordered_json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot read " + path);
  try {
    return ordered_json::parse(in);
  } catch (const std::exception& e) {
    throw config_error(std::string("invalid JSON in ") + path + ": " +
                       e.what());
  }
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
  if (!out) throw std::runtime_error("cannot write " + path);
}

Tower build_preset(const std::string& preset, uint32_t p) {
  if (preset.size() != 1) throw config_error("preset must be one letter");
  return Tower::build(toy_tower_params(preset[0], p));
}

int print_report(const VerifyReport& report, const std::string& out_path) {
  for (const CheckResult& c : report.checks) {
    std::cout << c.name << ": " << (c.pass ? "PASS" : "FAIL");
    if (!c.detail.empty()) std::cout << "  (" << c.detail << ")";
    std::cout << "\n";
  }
  if (!out_path.empty()) {
    write_file(out_path, report.to_json().dump(2) + "\n");
  }
  return report.pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact-arithmetic engine for graded nil towers of "
               "subexponential growth"};
  app.require_subcommand(1);

  auto* run_cmd = app.add_subcommand("run", "Execute suites from a config");
  std::string config_path;
  std::string run_out;
  run_cmd->add_option("--config", config_path, "JSON config file")
      ->required();
  run_cmd->add_option("--out", run_out, "Override the configured out_dir");

  auto* verify_cmd =
      app.add_subcommand("verify", "Check tower invariants of a preset");
  std::string v_preset = "a";
  uint32_t v_p = 2;
  int v_kmax = 3;
  std::string v_out;
  verify_cmd->add_option("--preset", v_preset, "Tower preset a..d");
  verify_cmd->add_option("--p", v_p, "Field characteristic");
  verify_cmd->add_option("--kmax", v_kmax, "Top level to check");
  verify_cmd->add_option("--out", v_out, "Write the JSON report here");

  auto* hilbert_cmd =
      app.add_subcommand("hilbert", "Exact quotient dimensions vs bounds");
  std::string h_preset = "a";
  uint32_t h_p = 2;
  int64_t h_nmax = 6;
  std::string h_alpha = "log2log2";
  std::string h_out;
  hilbert_cmd->add_option("--preset", h_preset, "Tower preset a..d");
  hilbert_cmd->add_option("--p", h_p, "Field characteristic");
  hilbert_cmd->add_option("--nmax", h_nmax, "Top degree (<= 7)");
  hilbert_cmd->add_option("--alpha", h_alpha,
                          "Growth exponent: log2log2, log2, sqrt_log");
  hilbert_cmd->add_option("--out", h_out, "Write the CSV here");

  auto* nil_cmd =
      app.add_subcommand("nil", "Certify a power of an element in the ideal");
  std::string n_preset = "a";
  uint32_t n_p = 2;
  std::string n_element = "x";
  uint64_t n_exponent = 1;
  nil_cmd->add_option("--preset", n_preset, "Tower preset a..d");
  nil_cmd->add_option("--p", n_p, "Field characteristic");
  nil_cmd->add_option("--element", n_element, "Homogeneous element");
  nil_cmd->add_option("--exponent", n_exponent, "Power to certify")
      ->required();

  auto* sched_cmd = app.add_subcommand(
      "schedule", "Build the greedy schedule and verify its chain");
  std::string s_alpha = "log2log2";
  size_t s_count = 2;
  size_t s_samples = 3;
  uint64_t s_seed = 0;
  std::string s_grade = "theorem";
  std::string s_out;
  sched_cmd->add_option("--grade", s_grade, "Only \"theorem\" here; toy "
                        "schedules are configured via run --config");
  sched_cmd->add_option("--alpha", s_alpha, "Growth exponent spec");
  sched_cmd->add_option("--count", s_count, "Number of schedule entries");
  sched_cmd->add_option("--samples", s_samples, "Sampled chain degrees");
  sched_cmd->add_option("--seed", s_seed, "Sampling seed")->required();
  sched_cmd->add_option("--out", s_out, "Write schedule + chain JSON here");

  auto* tower_cmd =
      app.add_subcommand("tower", "Build, dump, or reload a tower");
  std::string t_preset = "a";
  uint32_t t_p = 2;
  std::string t_dump;
  std::string t_load;
  bool t_verify = false;
  tower_cmd->add_option("--preset", t_preset, "Tower preset a..d");
  tower_cmd->add_option("--p", t_p, "Field characteristic");
  tower_cmd->add_option("--dump", t_dump, "Serialize the tower to this file");
  tower_cmd->add_option("--load", t_load, "Deserialize instead of building");
  tower_cmd->add_flag("--verify", t_verify, "Run the invariant checks too");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (run_cmd->parsed()) {
      ordered_json config = load_json_file(config_path);
      if (!run_out.empty()) config["out_dir"] = run_out;
      return run_config(config);
    }
    if (verify_cmd->parsed()) {
      Tower tw = build_preset(v_preset, v_p);
      return print_report(verify_conditions(tw, v_kmax), v_out);
    }
    if (hilbert_cmd->parsed()) {
      Tower tw = build_preset(h_preset, h_p);
      std::string csv =
          hilbert_csv(hilbert_table(tw, h_nmax, AlphaSpec::by_name(h_alpha)));
      std::cout << csv;
      if (!h_out.empty()) write_file(h_out, csv);
      return 0;
    }
    if (nil_cmd->parsed()) {
      Tower tw = build_preset(n_preset, n_p);
      NilCertificate cert = nil_check(
          tw, FreeVector::parse(n_element, tw.field()), n_exponent);
      std::cout << cert.to_json().dump(2) << "\n";
      return cert.nilpotent_witness ? 0 : 1;
    }
    if (sched_cmd->parsed()) {
      if (s_grade != "theorem") {
        throw config_error(
            "toy schedules need explicit parameters; use run --config");
      }
      AlphaSpec alpha = AlphaSpec::by_name(s_alpha);
      SparseSchedule sched =
          build_schedule(alpha, s_count, ScheduleGrade::Theorem);
      ScheduleChainReport chain =
          verify_schedule(sched, alpha, s_samples, s_seed);
      ordered_json j;
      j["schedule"] = sched.to_json();
      j["chain"] = chain.to_json();
      std::cout << j.dump(2) << "\n";
      if (!s_out.empty()) write_file(s_out, j.dump(2) + "\n");
      return chain.core_pass() ? 0 : 1;
    }
    if (tower_cmd->parsed()) {
      Tower tw = t_load.empty()
                     ? build_preset(t_preset, t_p)
                     : Tower::from_json(load_json_file(t_load));
      if (!t_dump.empty()) {
        write_file(t_dump, tw.to_json().dump(2) + "\n");
      }
      if (t_verify) {
        return print_report(
            verify_conditions(tw, std::min(3, tw.max_level())), "");
      }
      return 0;
    }
  } catch (const config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const capacity_error& e) {
    std::cerr << "capacity: " << e.what() << " (degree " << e.degree()
              << ")\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
