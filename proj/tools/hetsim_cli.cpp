// Config-driven experiment runner.
//
// Usage:
//   hetsim --config <path> [--out <path>] [--seed <u64>] [--threads <n>]
//
// Exit codes: 0 success, 1 config error, 2 runtime error.

#include <charconv>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "hetsim/runner.hpp"

namespace {

void print_usage(std::ostream& os) {
  os << "usage: hetsim --config <path> [--out <path>] [--seed <u64>] [--threads <n>]\n"
     << "\n"
     << "Runs the experiment described by the config file and writes one CSV\n"
     << "row per (sweep value, mode). --out, --seed and --threads override the\n"
     << "corresponding config keys.\n";
}

struct CliArgs {
  std::string config_path;
  std::optional<std::string> out;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
};

std::optional<std::string> next_value(int argc, char** argv, int& i, const std::string& flag) {
  if (i + 1 >= argc) {
    std::cerr << "error: " << flag << " expects a value\n";
    return std::nullopt;
  }
  return std::string(argv[++i]);
}

bool parse_u64_arg(const std::string& text, const std::string& flag, std::uint64_t& out) {
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    std::cerr << "error: " << flag << " expects an unsigned integer, got '" << text << "'\n";
    return false;
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CliArgs args;
  for (int i = 1; i < argc; ++i) {
    const std::string flag = argv[i];
    if (flag == "--help" || flag == "-h") {
      print_usage(std::cout);
      return 0;
    } else if (flag == "--config") {
      auto v = next_value(argc, argv, i, flag);
      if (!v) return 1;
      args.config_path = *v;
    } else if (flag == "--out") {
      auto v = next_value(argc, argv, i, flag);
      if (!v) return 1;
      args.out = *v;
    } else if (flag == "--seed") {
      auto v = next_value(argc, argv, i, flag);
      if (!v) return 1;
      std::uint64_t seed = 0;
      if (!parse_u64_arg(*v, flag, seed)) return 1;
      args.seed = seed;
    } else if (flag == "--threads") {
      auto v = next_value(argc, argv, i, flag);
      if (!v) return 1;
      std::uint64_t threads = 0;
      if (!parse_u64_arg(*v, flag, threads)) return 1;
      args.threads = static_cast<unsigned>(threads);
    } else {
      std::cerr << "error: unknown flag '" << flag << "'\n";
      print_usage(std::cerr);
      return 1;
    }
  }

  if (args.config_path.empty()) {
    std::cerr << "error: --config is required\n";
    print_usage(std::cerr);
    return 1;
  }

  std::string text;
  {
    std::ifstream in(args.config_path, std::ios::binary);
    if (!in) {
      std::cerr << "error: cannot read config file: " << args.config_path << "\n";
      return 1;
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    text = buffer.str();
  }

  hetsim::RunConfig cfg;
  try {
    cfg = hetsim::parse_config(text);
  } catch (const hetsim::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  }

  if (args.out) cfg.out = *args.out;
  if (args.seed) cfg.seed = *args.seed;
  if (args.threads) cfg.threads = *args.threads;

  try {
    hetsim::run_to_output(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
