#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "lightlike/scene.hpp"

namespace {

constexpr int kExitInput = 2;
constexpr int kExitInconsistent = 3;

std::optional<std::uint64_t> env_seed() {
  const char* v = std::getenv("LIGHTLIKE_LAB_SEED");
  if (!v || !*v) return std::nullopt;
  try {
    std::size_t used = 0;
    unsigned long long s = std::stoull(v, &used);
    if (used != std::string(v).size()) return std::nullopt;
    return static_cast<std::uint64_t>(s);
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

int verify(const std::string& path, const std::string& report_path, std::optional<std::uint64_t> seed_flag,
           bool float_check) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot read " << path << "\n";
    return kExitInput;
  }
  std::stringstream buf;
  buf << in.rdbuf();

  lightlike::Scene scene = lightlike::parse_scene(buf.str());
  lightlike::RunOptions opt;
  // Flag, then the scene's own seed, then the environment.
  opt.seed = seed_flag ? *seed_flag : scene.seed ? *scene.seed : env_seed().value_or(0);
  opt.float_check = float_check;
  lightlike::Report rep = lightlike::run(scene, opt);

  if (report_path.empty()) {
    std::cout << rep.text();
  } else {
    std::ofstream out(report_path, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot write " << report_path << "\n";
      return kExitInput;
    }
    out << rep.text();
    for (const auto& c : rep.body["checks"])
      std::cout << c["name"].get<std::string>() << " " << c["verdict"].get<std::string>()
                << (c["consistent"].get<bool>() ? "" : " INCONSISTENT") << "\n";
    const auto& sum = rep.body["summary"];
    std::cout << "holds " << sum["holds"] << ", fails " << sum["fails"] << ", not applicable "
              << sum["not_applicable"] << ", inconsistent " << sum["inconsistent"] << "\n";
  }
  return rep.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification of lightlike submanifolds of metallic semi-Euclidean spaces"};
  app.require_subcommand(1);

  auto* cmd = app.add_subcommand("verify", "Run the checks listed in a scene file");
  std::string scene_path, report_path;
  std::optional<std::uint64_t> seed;
  bool float_check = false, list = false;
  cmd->add_option("scene", scene_path, "Scene JSON file");
  cmd->add_option("--report", report_path, "Write the JSON report here instead of stdout");
  cmd->add_option("--seed", seed, "Seed for randomized audits (falls back to LIGHTLIKE_LAB_SEED)");
  cmd->add_flag("--float-check", float_check, "Compare against a floating-point computation at 1e-9");
  cmd->add_flag("--list-checks", list, "List the available checks and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  if (list) {
    for (const auto& c : lightlike::check_catalog()) std::cout << c.id << "\t" << c.summary << "\n";
    return 0;
  }
  if (scene_path.empty()) {
    std::cerr << "error: a scene file is required\n";
    return kExitInput;
  }

  try {
    return verify(scene_path, report_path, seed, float_check);
  } catch (const lightlike::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == lightlike::ErrorKind::InternalInconsistency ? kExitInconsistent : kExitInput;
  }
}
