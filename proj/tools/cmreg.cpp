// Command-line front end: runs a script and prints its report.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cmreg/script.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Run a regularity script"};
  std::string path;
  std::string eval_text;
  std::uint64_t seed = 0;
  std::string format = "text";
  std::string field_override;
  int trials = 50;
  bool print_only = false;
  app.add_option("script", path, "Script file, or - for standard input");
  app.add_option("--eval", eval_text, "Script text given inline");
  auto* seed_opt = app.add_option("--seed", seed, "Random seed");
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--field-override", field_override, "Replace the field of every ring, e.g. GF(101)");
  app.add_option("--trials", trials, "Random draws per filter-regular search")->check(CLI::PositiveNumber);
  app.add_flag("--print", print_only, "Print the parsed script in canonical form and exit");
  CLI11_PARSE(app, argc, argv);

  std::string text;
  if (!eval_text.empty()) {
    text = eval_text;
  } else if (path.empty() || path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    text = ss.str();
  } else {
    std::ifstream in(path);
    if (!in) {
      std::cerr << "cannot open " << path << "\n";
      return 2;
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }

  std::optional<cmreg::Field> field;
  try {
    if (!field_override.empty()) field = cmreg::parse_field(field_override);
    if (print_only) {
      std::cout << cmreg::parse_script(text, field).to_string();
      return 0;
    }
  } catch (const cmreg::Error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  cmreg::RunOptions opt;
  if (seed_opt->count() > 0) opt.seed = seed;
  opt.format = format == "json" ? cmreg::RunOptions::Format::Json : cmreg::RunOptions::Format::Text;
  opt.trials = trials;
  cmreg::RunReport rep = cmreg::run_script_text(text, opt, field);
  std::cout << rep.render(opt.format);
  return rep.exit_code;
}
