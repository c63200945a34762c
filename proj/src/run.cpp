#include "nilgrowth/run.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <vector>

#include "nilgrowth/growth_ideal.hpp"
#include "nilgrowth/power_relations.hpp"
#include "nilgrowth/schedule.hpp"
#include "nilgrowth/verify.hpp"

namespace nilgrowth {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

void write_text(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
  if (!out) {
    throw std::runtime_error("cannot write " + path.string());
  }
}

void write_json(const fs::path& path, const json& j) {
  write_text(path, j.dump(2) + "\n");
}

std::vector<Word> parse_word_list(const json& j, const char* what) {
  if (!j.is_array() || j.empty()) {
    throw config_error(std::string(what) + " must be a nonempty array");
  }
  std::vector<Word> out;
  for (const auto& e : j) {
    out.push_back(Word::parse(e.get<std::string>()));
  }
  return out;
}

TowerParams parse_tower(const json& j) {
  if (j.contains("preset")) {
    std::string p = j.at("preset").get<std::string>();
    if (p.size() != 1) throw config_error("tower preset must be one letter");
    return toy_tower_params(p[0], j.value("p", 2u));
  }
  TowerParams tp;
  tp.field = FieldSpec(j.value("p", 2u));
  tp.f = j.at("f").get<std::vector<int64_t>>();
  tp.g = j.at("g").get<std::vector<int64_t>>();
  for (const auto& slot : j.at("relations")) {
    RelationSlot s;
    if (slot.contains("set")) {
      s.recipe_words = parse_word_list(slot.at("set"), "relation set");
    } else {
      for (const auto& row : slot.at("rows")) {
        s.rows.push_back(
            FreeVector::parse(row.get<std::string>(), tp.field));
      }
    }
    tp.relations.push_back(std::move(s));
  }
  tp.max_level = j.at("max_level").get<int>();
  tp.dense_cap = j.value("dense_cap", kDefaultDenseCap);
  tp.relax_dim_bound = j.value("relax_dim_bound", false);
  return tp;
}

struct RunPlan {
  std::vector<std::string> suites;
  fs::path out_dir;
  uint64_t seed = 0;
  bool has_seed = false;
  int kmax = 3;
  int64_t boundary_n_max = 6;
  int64_t hilbert_n_max = 6;
  AlphaSpec alpha = AlphaSpec::log2log2();

  std::optional<TowerParams> tower_params;

  std::vector<Word> power_gens;
  int64_t power_n = 2;
  uint64_t power_samples = 0;

  std::string nil_element = "x";
  uint64_t nil_exponent = 1;

  ScheduleGrade sched_grade = ScheduleGrade::Theorem;
  size_t sched_count = 2;
  size_t sched_samples = 3;
  std::optional<ToyOverride> sched_toy;
};

bool wants(const RunPlan& plan, const std::string& suite) {
  return std::find(plan.suites.begin(), plan.suites.end(), suite) !=
         plan.suites.end();
}

RunPlan parse_plan(const json& config) {
  RunPlan plan;
  if (!config.is_object()) throw config_error("config must be a JSON object");
  if (!config.contains("suites") || !config.at("suites").is_array() ||
      config.at("suites").empty()) {
    throw config_error("config needs a nonempty \"suites\" array");
  }
  static const std::vector<std::string> known = {
      "verify", "projection", "boundary", "hilbert", "ideal",
      "growth", "power",      "nil",      "schedule", "chain"};
  for (const auto& s : config.at("suites")) {
    std::string name = s.get<std::string>();
    if (std::find(known.begin(), known.end(), name) == known.end()) {
      throw config_error("unknown suite: " + name);
    }
    if (wants(plan, name)) throw config_error("duplicate suite: " + name);
    plan.suites.push_back(name);
  }
  plan.out_dir = config.value("out_dir", std::string("."));
  if (config.contains("seed")) {
    plan.seed = config.at("seed").get<uint64_t>();
    plan.has_seed = true;
  }
  if (config.contains("parallelism")) {
    int par = config.at("parallelism").get<int>();
    if (par < 1) throw config_error("parallelism must be >= 1");
    // Accepted for interface stability; execution is sequential either way.
  }
  plan.kmax = config.value("kmax", 3);
  plan.boundary_n_max = config.value("n_max", int64_t(6));
  plan.hilbert_n_max = config.value("hilbert_n_max", int64_t(6));
  plan.alpha = AlphaSpec::by_name(config.value("alpha", std::string("log2log2")));

  if (config.contains("tower")) {
    plan.tower_params = parse_tower(config.at("tower"));
  }

  if (config.contains("power")) {
    const json& p = config.at("power");
    plan.power_gens = parse_word_list(p.at("gens"), "power gens");
    plan.power_n = p.at("n").get<int64_t>();
    plan.power_samples = p.value("samples", uint64_t(0));
  } else if (wants(plan, "power")) {
    throw config_error("the power suite needs a \"power\" section");
  }

  if (config.contains("nil")) {
    const json& p = config.at("nil");
    plan.nil_element = p.at("element").get<std::string>();
    plan.nil_exponent = p.at("exponent").get<uint64_t>();
  } else if (wants(plan, "nil")) {
    throw config_error("the nil suite needs a \"nil\" section");
  }

  if (config.contains("schedule")) {
    const json& p = config.at("schedule");
    std::string grade = p.value("grade", std::string("theorem"));
    if (grade == "toy") {
      plan.sched_grade = ScheduleGrade::Toy;
      ToyOverride ov;
      ov.f = p.at("f").get<std::vector<int64_t>>();
      ov.g = p.at("g").get<std::vector<int64_t>>();
      for (const auto& set : p.at("sets")) {
        ov.sets.push_back(parse_word_list(set, "schedule set"));
      }
      plan.sched_count = p.value("count", ov.f.size());
      plan.sched_toy = std::move(ov);
    } else if (grade == "theorem") {
      plan.sched_grade = ScheduleGrade::Theorem;
      plan.sched_count = p.value("count", size_t(2));
    } else {
      throw config_error("schedule grade must be \"toy\" or \"theorem\"");
    }
    plan.sched_samples = p.value("samples", size_t(3));
  } else if (wants(plan, "schedule") || wants(plan, "chain")) {
    throw config_error("schedule/chain suites need a \"schedule\" section");
  }

  bool samples_needed = wants(plan, "chain") ||
                        (wants(plan, "power") && plan.power_samples > 0);
  if (samples_needed && !plan.has_seed) {
    throw config_error("sampled suites require an explicit \"seed\"");
  }
  for (const char* name : {"verify", "projection", "boundary", "hilbert",
                           "ideal", "growth", "nil"}) {
    if (wants(plan, name) && !plan.tower_params) {
      throw config_error(std::string("suite ") + name + " needs a tower");
    }
  }
  return plan;
}

}  // namespace

TowerParams toy_tower_params(char preset, uint32_t p) {
  TowerParams tp;
  tp.field = FieldSpec(p);
  auto recipe = [](std::initializer_list<const char*> words) {
    RelationSlot s;
    for (const char* w : words) s.recipe_words.push_back(Word::parse(w));
    return s;
  };
  auto rows = [&tp](std::initializer_list<const char*> exprs) {
    RelationSlot s;
    for (const char* e : exprs) {
      s.rows.push_back(FreeVector::parse(e, tp.field));
    }
    return s;
  };
  switch (preset) {
    case 'a':
      tp.f = {4};
      tp.g = {2};
      tp.relations.push_back(recipe({"x"}));
      tp.max_level = 7;
      break;
    case 'b':
      tp.f = {2};
      tp.g = {1};
      tp.relations.push_back(rows({"xxxx"}));
      tp.max_level = 4;
      break;
    case 'c':
      tp.f = {2, 6};
      tp.g = {1, 2};
      tp.relations.push_back(rows({"xxxx"}));
      tp.relations.push_back(recipe({"x"}));
      tp.max_level = 6;
      break;
    case 'd':
      tp.max_level = 6;
      break;
    default:
      throw config_error(std::string("unknown tower preset: ") + preset);
  }
  return tp;
}

int run_config(const nlohmann::ordered_json& config) {
  RunPlan plan;
  std::optional<Tower> tower;
  try {
    plan = parse_plan(config);
    if (plan.tower_params) tower = Tower::build(*plan.tower_params);
  } catch (const config_error&) {
    throw;
  } catch (const capacity_error&) {
    throw;
  } catch (const std::exception& e) {
    throw config_error(e.what());
  }
  fs::create_directories(plan.out_dir);
  const FieldSpec field =
      plan.tower_params ? plan.tower_params->field : FieldSpec(2);

  bool all_pass = true;
  std::optional<SparseSchedule> sched;
  for (const std::string& suite : plan.suites) {
    if (suite == "verify") {
      VerifyReport report = verify_conditions(*tower, plan.kmax);
      write_json(plan.out_dir / "verify.json", report.to_json());
      all_pass = all_pass && report.pass();
    } else if (suite == "projection") {
      json j;
      j["format"] = "nilgrowth-projection-v1";
      j["p"] = field.p();
      j["levels"] = json::array();
      bool pass = true;
      uint64_t words = 0;
      for (int k = 0; k <= std::min(plan.kmax, 3); ++k) {
        bool ok = projection_matches_kernel(*tower, k);
        pass = pass && ok;
        words += uint64_t(1) << (int64_t(1) << k);
        j["levels"].push_back(
            {{"k", k}, {"words", uint64_t(1) << (int64_t(1) << k)},
             {"pass", ok}});
      }
      j["words_total"] = words;
      j["pass"] = pass;
      write_json(plan.out_dir / "projection.json", j);
      all_pass = all_pass && pass;
    } else if (suite == "boundary") {
      json j;
      j["format"] = "nilgrowth-boundary-v1";
      j["rows"] = json::array();
      bool pass = true;
      for (int64_t n = 1; n <= plan.boundary_n_max; ++n) {
        BoundarySpaces b = boundary_spaces(*tower, n);
        pass = pass && b.left.complete && b.right.complete;
        j["rows"].push_back(b.to_json());
      }
      j["pass"] = pass;
      write_json(plan.out_dir / "boundary.json", j);
      all_pass = all_pass && pass;
    } else if (suite == "hilbert") {
      std::vector<HilbertRow> rows =
          hilbert_table(*tower, plan.hilbert_n_max, plan.alpha);
      write_text(plan.out_dir / "hilbert.csv", hilbert_csv(rows));
      bool pass = std::all_of(rows.begin(), rows.end(),
                              [](const HilbertRow& r) { return r.within; });
      all_pass = all_pass && pass;
    } else if (suite == "ideal") {
      json j;
      j["format"] = "nilgrowth-ideal-v1";
      j["rows"] = json::array();
      bool pass = true;
      for (int64_t n = 1; n <= std::min<int64_t>(plan.boundary_n_max, 7);
           ++n) {
        EchelonSubspace comp = ideal_component(*tower, n);
        json row{{"n", n}, {"dim", comp.dim()}};
        if (n <= 3) {
          bool agrees = comp.same_space(ideal_component_oracle(*tower, n));
          row["oracle_agrees"] = agrees;
          pass = pass && agrees;
        }
        j["rows"].push_back(std::move(row));
      }
      j["pass"] = pass;
      write_json(plan.out_dir / "ideal.json", j);
      all_pass = all_pass && pass;
    } else if (suite == "growth") {
      GrowthReport report = growth_check(
          *tower, std::min<int64_t>(plan.kmax, tower->max_level()));
      write_json(plan.out_dir / "growth.json", report.to_json());
      all_pass = all_pass && report.pass();
    } else if (suite == "power") {
      PowerContainmentReport report = verify_power_containment(
          plan.power_gens, plan.power_n, field, plan.power_samples,
          plan.seed);
      json j;
      j["format"] = "nilgrowth-power-v1";
      j["p"] = report.p;
      auto gens = json::array();
      for (const Word& w : report.gens) gens.push_back(w.str());
      j["gens"] = std::move(gens);
      j["n"] = report.n;
      j["dim_y"] = report.dim_y;
      j["dim_bound"] = report.dim_bound;
      j["exhaustive"] = report.exhaustive;
      j["lambdas_checked"] = report.lambdas_checked;
      j["checks_run"] = report.checks_run;
      j["failures"] = json::array();
      for (const PowerCheckFailure& fl : report.failures) {
        j["failures"].push_back({{"lambda", fl.lambda},
                                 {"left_factor", fl.left_factor},
                                 {"degree", fl.degree}});
      }
      j["pass"] = report.pass();
      write_json(plan.out_dir / "power.json", j);
      all_pass = all_pass && report.pass();
    } else if (suite == "nil") {
      NilCertificate cert = nil_check(
          *tower, FreeVector::parse(plan.nil_element, field),
          plan.nil_exponent);
      write_json(plan.out_dir / "nil.json", cert.to_json());
      all_pass = all_pass && cert.nilpotent_witness;
    } else if (suite == "schedule") {
      if (!sched) {
        sched = build_schedule(plan.alpha, plan.sched_count, plan.sched_grade,
                               plan.sched_toy);
      }
      write_json(plan.out_dir / "schedule.json", sched->to_json());
    } else if (suite == "chain") {
      if (!sched) {
        sched = build_schedule(plan.alpha, plan.sched_count, plan.sched_grade,
                               plan.sched_toy);
      }
      ScheduleChainReport report =
          verify_schedule(*sched, plan.alpha, plan.sched_samples, plan.seed);
      write_json(plan.out_dir / "chain.json", report.to_json());
      bool pass = true;
      if (plan.sched_grade == ScheduleGrade::Theorem) {
        pass = report.core_pass();
      } else {
        // Toy parameters are honest about their scale: the alpha margin is
        // out of reach, but the bit-length links must still hold.
        for (const ChainSample& s : report.samples) {
          for (const ChainLink& l : s.links) {
            if (l.name != "alpha-step") pass = pass && l.pass;
          }
        }
      }
      all_pass = all_pass && pass;
    }
  }
  return all_pass ? 0 : 1;
}

}  // namespace nilgrowth
