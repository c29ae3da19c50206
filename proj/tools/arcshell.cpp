#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "nabla/arcshell/session.hpp"
#include "nabla/error.hpp"

using namespace nabla;

int main(int argc, char** argv) {
  CLI::App app{"arcshell: arc spaces, motivic classes and zeta series of affine schemes"};
  std::string script_path;
  std::string command;
  bool all = false;
  std::string format = "text";
  std::string cache_dir;
  std::uint64_t characteristic = 0;
  ShellOptions options;

  app.add_option("--script", script_path, "session script")->required()->check(CLI::ExistingFile);
  auto* cmd_opt = app.add_option("--cmd", command, "command binding or command text to run");
  auto* all_opt = app.add_flag("--all", all, "run every command in script order (default)");
  cmd_opt->excludes(all_opt);
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--cache-dir", cache_dir, "directory for cached results");
  app.add_option("--char", characteristic, "characteristic of the default field (0 or a prime)");
  app.add_option("--max-depth", options.max_depth, "probe depth for traces")->check(CLI::PositiveNumber);
  app.add_option("--truncation", options.truncation, "series truncation order")->check(CLI::PositiveNumber);
  CLI11_PARSE(app, argc, argv);

  auto warn = [](const std::string& msg) { std::cerr << "warning: " << msg << "\n"; };
  try {
    options.default_field = characteristic == 0 ? FieldSpec::rationals() : FieldSpec::prime_field(characteristic);
    if (!cache_dir.empty()) {
      std::error_code ec;
      std::filesystem::create_directories(cache_dir, ec);
      if (ec) warn("cannot create cache directory " + cache_dir + "; running without cache");
      options.cache_dir = cache_dir;
    }
    std::ifstream in(script_path);
    std::stringstream text;
    text << in.rdbuf();
    Session session(parse_script(text.str()), options, warn);

    std::vector<ResultRecord> records;
    if (!command.empty()) {
      records.push_back(session.execute(command));
    } else {
      records = session.execute_all();
    }
    if (format == "json") {
      if (!command.empty()) {
        std::cout << records.front().to_json().dump(2) << "\n";
      } else {
        Json arr = Json::array();
        for (const auto& r : records) arr.push_back(r.to_json());
        std::cout << arr.dump(2) << "\n";
      }
    } else {
      for (const auto& r : records) std::cout << render_text(r) << "\n";
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
