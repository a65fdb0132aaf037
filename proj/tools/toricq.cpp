#include "toricq/cli/commands.hpp"

#include <CLI11.hpp>

int main(int argc, char **argv) {
  using namespace toricq;
  CLI::App app{"Quotients of smooth complete toric varieties by mu_p actions"};
  app.require_subcommand(1);

  auto *fan = app.add_subcommand("fan", "fan inspection");
  fan->require_subcommand(1);
  std::string fan_path;
  bool json = false;
  auto *check = fan->add_subcommand("check", "validate a fan and report smooth/complete/projective");
  check->add_option("file", fan_path)->required();
  check->add_flag("--json", json, "also print machine-readable diagnostics");
  auto *cgc = fan->add_subcommand("classgroup", "print the class group degrees of the rays");
  cgc->add_option("file", fan_path)->required();

  auto *sec = app.add_subcommand("sections", "monomial basis of a graded piece of the Cox ring");
  std::string cls;
  sec->add_option("file", fan_path)->required();
  sec->add_option("--class", cls, "class vector, comma separated")->required();

  auto *vf = app.add_subcommand("vf", "vector field inspection");
  vf->require_subcommand(1);
  std::string vf_path;
  cli::QuotientConfig cfg;
  std::int64_t p = 0;
  int ext = 0;
  auto *vcheck = vf->add_subcommand("check", "test whether a vector field generates a mu_p action");
  vcheck->add_option("fan", fan_path)->required();
  vcheck->add_option("vf", vf_path)->required();
  vcheck->add_option("--p", p, "characteristic (overrides the file)");
  vcheck->add_option("--ext", ext, "extension degree e of the coefficient field F_{p^e}")->check(CLI::PositiveNumber);

  auto *quo = app.add_subcommand("quotient", "compute the quotient fan and verify it");
  std::string out, expect;
  quo->add_option("fan", fan_path)->required();
  quo->add_option("vf", vf_path)->required();
  quo->add_option("--p", p, "characteristic (overrides the file)");
  quo->add_option("--ext", ext, "extension degree e of the coefficient field F_{p^e}")->check(CLI::PositiveNumber);
  quo->add_option("--bound", cfg.pipeline.bound, "degree bound for verification")->check(CLI::PositiveNumber);
  quo->add_option("--box", cfg.pipeline.box, "chart exponent box for verification")->check(CLI::PositiveNumber);
  quo->add_flag("--require-projective", cfg.pipeline.require_projective, "reject non-projective fans");
  bool skip = false;
  quo->add_flag("--skip-verify", skip, "skip the verification stage");
  quo->add_option("--out", out, "write the report here instead of stdout");
  quo->add_option("--expect", expect, "compare the report with a golden file (exit 5 on mismatch)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : cli::ParseFailure;
  }

  if (p != 0) cfg.field.p = p;
  if (ext != 0) cfg.field.e = ext;
  if (check->parsed()) return cli::fan_check(fan_path, json);
  if (cgc->parsed()) return cli::fan_classgroup(fan_path);
  if (sec->parsed()) return cli::sections(fan_path, cls);
  if (vcheck->parsed()) return cli::vf_check(fan_path, vf_path, cfg.field);
  if (quo->parsed()) {
    cfg.pipeline.verify = !skip;
    if (!out.empty()) cfg.out = out;
    if (!expect.empty()) cfg.expect = expect;
    return cli::quotient(fan_path, vf_path, cfg);
  }
  return cli::Internal;
}
