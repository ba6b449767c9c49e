// Command-line front end: Monte-Carlo campaigns over the four scenarios,
// the worked-example verification and the library self-test.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "qka/qka.hpp"

namespace {

using nlohmann::json;

// Flags override config-file values; only keys for flags the user did not
// pass on the command line are taken from the file.
void apply_config_file(const std::string& path, CLI::App* run,
                       std::string& scenario, std::size_t& n,
                       std::size_t& trials, std::size_t& decoys,
                       double& threshold, std::uint64_t& seed,
                       std::string& noise, std::string& backend,
                       std::string& target, std::string& ka, std::string& kb,
                       std::string& out, bool& transcripts,
                       int& eve_transmissions) {
  std::ifstream f(path);
  if (!f) throw CLI::ValidationError("--config", "cannot open " + path);
  json j = json::parse(f);
  auto take = [&](const char* flag, const char* key, auto& var) {
    if (run->count(flag) == 0 && j.contains(key)) {
      j.at(key).get_to(var);
    }
  };
  take("--scenario", "scenario", scenario);
  take("--n", "n", n);
  take("--trials", "trials", trials);
  take("--decoys", "decoys", decoys);
  take("--threshold", "threshold", threshold);
  take("--seed", "seed", seed);
  take("--noise", "noise", noise);
  take("--backend", "backend", backend);
  take("--target", "target", target);
  take("--ka", "ka", ka);
  take("--kb", "kb", kb);
  take("--out", "out", out);
  take("--transcripts", "transcripts", transcripts);
  take("--eve-transmissions", "eve_transmissions", eve_transmissions);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"two-party quantum key agreement simulator"};
  app.require_subcommand(1);

  std::string scenario = "honest";
  std::size_t n = 16, trials = 1;
  std::size_t decoys = 0;  // 0 = default max(8, n)
  double threshold = 0.05;
  std::uint64_t seed = 0x5EEDC0DEULL;
  std::string noise = "dp", backend = "symbolic";
  std::string target, ka, kb, out, config_file;
  bool transcripts = false;
  int eve_transmissions = 1;

  CLI::App* run = app.add_subcommand("run", "run a Monte-Carlo campaign");
  run->add_option("--scenario", scenario,
                  "honest | eve | perm-attack-original | perm-attack-improved")
      ->capture_default_str();
  run->add_option("--n", n, "Bell-pair count")->capture_default_str();
  run->add_option("--trials", trials, "trial count")->capture_default_str();
  run->add_option("--decoys", decoys, "decoys per transmission (0 = max(8,n))");
  run->add_option("--threshold", threshold, "decoy error-rate abort threshold")
      ->capture_default_str();
  run->add_option("--seed", seed, "campaign seed")->capture_default_str();
  run->add_option("--noise", noise, "dp | r")->capture_default_str();
  run->add_option("--backend", backend, "symbolic | statevector")
      ->capture_default_str();
  run->add_option("--target", target, "attack target final key ('0'/'1' text)");
  run->add_option("--ka", ka, "fixed K_A as '0'/'1' text (2n bits)");
  run->add_option("--kb", kb, "fixed K_B as '0'/'1' text (2n bits)");
  run->add_option("--out", out, "output directory for summary/transcripts");
  run->add_flag("--transcripts", transcripts, "write one transcript per trial");
  run->add_option("--eve-transmissions", eve_transmissions,
                  "which transmissions Eve attacks: 1, 2 or 3 (both)");
  run->add_option("--config", config_file, "JSON campaign file (flags win)");

  CLI::App* verify =
      app.add_subcommand("verify-example", "check the worked two-pair instance");
  CLI::App* self = app.add_subcommand("selftest",
                                      "transformation table, swap rule and "
                                      "DFS invariance checks");

  CLI11_PARSE(app, argc, argv);

  try {
    if (verify->parsed()) {
      bool ok = qka::verify_worked_example(&std::cout);
      std::cout << (ok ? "verify-example: PASS" : "verify-example: FAIL")
                << std::endl;
      return ok ? 0 : 1;
    }
    if (self->parsed()) {
      bool ok = qka::selftest(&std::cout);
      std::cout << (ok ? "selftest: PASS" : "selftest: FAIL") << std::endl;
      return ok ? 0 : 1;
    }

    if (!config_file.empty()) {
      apply_config_file(config_file, run, scenario, n, trials, decoys,
                        threshold, seed, noise, backend, target, ka, kb, out,
                        transcripts, eve_transmissions);
    }

    qka::Campaign campaign;
    campaign.scenario = qka::scenario_from_string(scenario);
    campaign.trials = trials;
    campaign.config = qka::ProtocolConfig::with_defaults(n);
    if (decoys > 0) campaign.config.decoy_count = decoys;
    campaign.config.error_threshold = threshold;
    campaign.config.seed = seed;
    campaign.config.noise = qka::noise_model_from_string(noise);
    campaign.config.backend = qka::backend_from_string(backend);
    campaign.output_path = out;
    campaign.write_transcripts = transcripts;
    campaign.eve_transmissions = eve_transmissions;
    if (!target.empty()) {
      campaign.goal = qka::AttackGoal::final_key_goal(target);
    }
    if (!ka.empty()) campaign.ka = qka::DibitString::from_bits(ka);
    if (!kb.empty()) campaign.kb = qka::DibitString::from_bits(kb);

    qka::SummaryReport report = qka::run_campaign(campaign);
    std::cout << "scenario             " << qka::to_string(campaign.scenario)
              << "\n"
              << report.to_table();
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 2;
  }
}
