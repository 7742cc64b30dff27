// SPDX-License-Identifier: Apache-2.0
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "embias/embias.hpp"

namespace fs = std::filesystem;
using namespace embias;

namespace {

struct Common {
  std::string embeddings;
  std::string embedding_format = "auto";
  bool no_normalize = false;
  std::string suite = "builtin";
  std::size_t permutations = 10000;
  std::string mode = "auto";
  std::uint64_t exact_threshold = 20000;
  std::uint64_t seed = 0;
  std::string tie_policy = "strict";
  std::string stddev = "population";
  std::string policy = "drop";
  std::string script = "romanized";
  std::string out;
  std::string format = "json";
  std::size_t threads = 1;
};

void add_table_flags(CLI::App* app, Common& c, bool required) {
  auto* opt = app->add_option("--embeddings", c.embeddings, "GloVe or word2vec text file");
  if (required) opt->required();
  app->add_option("--embedding-format", c.embedding_format, "auto | glove | word2vec")
      ->check(CLI::IsMember({"auto", "glove", "word2vec"}));
  app->add_flag("--no-normalize", c.no_normalize, "keep vectors as stored instead of unit-normalizing");
}

void add_test_flags(CLI::App* app, Common& c) {
  app->add_option("--suite", c.suite, "suite file, 'builtin' or 'builtin-translated'");
  app->add_option("--permutations", c.permutations, "sampled permutations per test");
  app->add_option("--mode", c.mode, "auto | exact | sampled")->check(CLI::IsMember({"auto", "exact", "sampled"}));
  app->add_option("--exact-threshold", c.exact_threshold, "largest C(2n,n) enumerated in auto mode");
  app->add_option("--seed", c.seed, "permutation seed");
  app->add_option("--tie-policy", c.tie_policy, "strict | non-strict")
      ->check(CLI::IsMember({"strict", "non-strict"}));
  app->add_option("--stddev", c.stddev, "population | sample")->check(CLI::IsMember({"population", "sample"}));
  app->add_option("--policy", c.policy, "OOV policy: strict | drop")->check(CLI::IsMember({"strict", "drop"}));
  app->add_option("--script", c.script, "romanized | devanagari")
      ->check(CLI::IsMember({"romanized", "devanagari"}));
  app->add_option("--threads", c.threads, "worker threads")->check(CLI::PositiveNumber);
}

void add_output_flags(CLI::App* app, Common& c) {
  app->add_option("--out", c.out, "report path (default: stdout)");
  app->add_option("--format", c.format, "json | md")->check(CLI::IsMember({"json", "md"}));
}

/// Input path as given, else relative to $EMBIAS_DATA_DIR.
std::string resolve_input(const std::string& path, const char* what) {
  if (fs::exists(path)) return path;
  if (const char* dir = std::getenv("EMBIAS_DATA_DIR"); dir && fs::path(path).is_relative()) {
    const fs::path candidate = fs::path(dir) / path;
    if (fs::exists(candidate)) return candidate.string();
  }
  throw UsageError(std::string(what) + " '" + path + "' does not exist");
}

EmbeddingTable load_table(const Common& c) {
  EmbeddingFormat format = EmbeddingFormat::auto_detect;
  if (c.embedding_format == "glove") format = EmbeddingFormat::glove_text;
  if (c.embedding_format == "word2vec") format = EmbeddingFormat::word2vec_text;
  auto table = load_embeddings_file(resolve_input(c.embeddings, "embeddings file"), format, !c.no_normalize);
  for (const auto& w : table.warnings()) std::cerr << "warning: " << w << "\n";
  return table;
}

std::vector<AssociationTest> load_tests(const std::string& suite) {
  if (suite == "builtin") return builtin::suites();
  if (suite == "builtin-translated") return builtin::translated_suites();
  return load_suite_file(resolve_input(suite, "suite file"));
}

PermutationPlan permutation_plan(const Common& c) {
  PermutationPlan p;
  if (c.mode == "exact") p.mode = PermutationMode::exact;
  if (c.mode == "sampled") p.mode = PermutationMode::sampled;
  p.sample_count = c.permutations;
  p.seed = c.seed;
  p.exact_threshold = c.exact_threshold;
  p.tie_policy = c.tie_policy == "strict" ? TiePolicy::strict : TiePolicy::non_strict;
  return p;
}

Conventions conventions(const Common& c) {
  return {c.stddev == "population" ? StddevConvention::population : StddevConvention::sample};
}
OovPolicy oov_policy(const Common& c) {
  return c.policy == "strict" ? OovPolicy::strict : OovPolicy::drop_with_warning;
}
Script script(const Common& c) { return c.script == "romanized" ? Script::romanized : Script::devanagari; }

Json config_echo(const char* command, const Common& c) {
  Json j = Json::object();
  j["command"] = command;
  j["embeddings"] = c.embeddings;
  j["embedding_format"] = c.embedding_format;
  j["normalize"] = !c.no_normalize;
  j["suite"] = c.suite;
  j["policy"] = to_string(oov_policy(c));
  j["script"] = c.script;
  j["permutations"] = c.permutations;
  j["mode"] = c.mode;
  j["exact_threshold"] = c.exact_threshold;
  j["seed"] = c.seed;
  j["tie_policy"] = c.tie_policy;
  j["stddev"] = c.stddev;
  return j;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot open '" + path + "' for writing");
  out << text;
  out.flush();
  if (!out) throw DataError("I/O error while writing '" + path + "'");
}

void emit_report(const AuditReport& report, const std::string& path, const std::string& format) {
  write_text(path, format == "md" ? render_markdown(report) : render_json(report));
}

void log_oov(const std::vector<TestOutcome>& outcomes) {
  for (const auto& o : outcomes) {
    if (o.error) {
      std::cerr << "error: " << o.test_name << ": " << o.error->message << "\n";
      continue;
    }
    for (const auto& e : o.result->oov_report) {
      std::cerr << "warning: " << o.test_name << ": " << e.list << " '" << e.token << "' " << e.reason << "\n";
    }
  }
}

// ---------------------------------------------------------------------------

int cmd_weat(const Common& c) {
  const auto table = load_table(c);
  const auto tests = load_tests(c.suite);
  const auto plan = permutation_plan(c);
  const auto conv = conventions(c);
  const auto policy = oov_policy(c);
  const auto sc = script(c);
  AuditReport report;
  report.config = config_echo("weat", c);
  report.warnings = table.warnings();
  report.results = run_tests(
      tests, [&](const AssociationTest& t) { return run_weat(resolve(t, table, policy, sc), plan, conv); },
      c.threads);
  log_oov(report.results);
  emit_report(report, c.out, c.format);
  return exit_code_for(report.results);
}

struct SeatFlags {
  std::string templates = "builtin";
  std::string precomputed;
  std::string emit_sentences;
  bool expand_attributes = true;
};

TemplateSet load_template_set(const std::string& spec) {
  if (spec == "builtin") return builtin_templates();
  if (spec == "identity") return identity_templates();
  return load_templates_file(resolve_input(spec, "template file"));
}

int cmd_seat(const Common& c, const SeatFlags& s) {
  const auto tests = load_tests(c.suite);
  const auto templates = load_template_set(s.templates);
  if (!s.emit_sentences.empty()) {
    std::ostringstream out;
    emit_sentences(tests, templates, s.expand_attributes, out);
    write_text(s.emit_sentences, out.str());
    return exit_code::kOk;
  }

  std::optional<EmbeddingTable> table;
  std::optional<SentenceTable> sentences;
  SeatSource source;
  if (!s.precomputed.empty()) {
    sentences = ingest_precomputed_file(resolve_input(s.precomputed, "precomputed sentence file"));
    source = &*sentences;
  } else {
    if (c.embeddings.empty()) throw UsageError("seat needs --embeddings or --precomputed");
    table = load_table(c);
    source = &*table;
  }

  const auto plan = permutation_plan(c);
  const auto conv = conventions(c);
  SeatOptions options;
  options.policy = oov_policy(c);
  options.script = script(c);
  options.expand_attributes = s.expand_attributes;

  AuditReport report;
  report.config = config_echo("seat", c);
  report.config["templates"] = s.templates;
  report.config["precomputed"] = s.precomputed;
  report.config["expand_attributes"] = s.expand_attributes;
  if (table) report.warnings = table->warnings();
  report.results = run_tests(
      tests,
      [&](const AssociationTest& t) { return run_seat(t, templates, source, plan, options, conv); },
      c.threads);
  log_oov(report.results);
  emit_report(report, c.out, c.format);
  return exit_code_for(report.results);
}

std::string format_dot(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3e", x);
  return buf;
}

int cmd_subspace(const Common& c, const std::string& spec_path) {
  const auto table = load_table(c);
  const auto specs = load_direction_specs_file(resolve_input(spec_path, "direction spec file"));
  std::vector<BiasDirection> directions;
  for (const auto& spec : specs) {
    directions.push_back(compute_direction(table, spec));
    for (const auto& w : directions.back().warnings) {
      std::cerr << "warning: " << directions.back().label << ": " << w << "\n";
    }
  }
  std::ostringstream file;
  write_directions(directions, file);
  if (c.out.empty()) throw UsageError("subspace needs --out");
  write_text(c.out, file.str());

  for (const auto& d : directions) std::cout << d.label << "\t" << d.provenance() << "\n";
  for (const auto& d : directions) {
    for (const auto& p : d.parents) {
      std::cout << "dot(" << d.label << ", " << p.label << ") = " << format_dot(dot(d.vector, p.vector)) << "\n";
    }
  }
  for (std::size_t i = 0; i < directions.size(); ++i) {
    for (std::size_t j = i + 1; j < directions.size(); ++j) {
      std::cout << "dot(" << directions[i].label << ", " << directions[j].label
                << ") = " << format_dot(dot(directions[i].vector, directions[j].vector)) << "\n";
    }
  }
  return exit_code::kOk;
}

int cmd_debias(const Common& c, const std::string& plan_path, const std::string& report_path) {
  const auto table = load_table(c);
  const DebiasPlan plan = load_plan_file(resolve_input(plan_path, "plan file"));
  const auto tests = load_tests(c.suite);
  DebiasResult result = apply_plan(table, plan);
  for (const auto& w : result.warnings) std::cerr << "warning: " << w << "\n";
  write_embeddings_file(result.table, c.out);

  AuditReport report;
  report.config = config_echo("debias", c);
  report.config["plan"] = plan_path;
  report.config["method"] = to_string(plan.method);
  report.warnings = table.warnings();
  report.warnings.insert(report.warnings.end(), result.warnings.begin(), result.warnings.end());
  Comparison comparison{to_string(plan.method), result.direction,
                        evaluate_before_after(table, result.table, tests, permutation_plan(c), oov_policy(c),
                                              conventions(c), c.threads)};
  std::vector<TestOutcome> all;
  for (const auto& r : comparison.rows) {
    all.push_back(r.before);
    all.push_back(r.after);
  }
  report.comparison = std::move(comparison);
  log_oov(all);
  emit_report(report, report_path, c.format);
  return exit_code_for(all);
}

int cmd_synth(const std::string& out, const std::string& kind, std::size_t dim, std::uint64_t seed,
              const std::string& suite_out) {
  if (kind == "builtin") {
    write_embeddings_file(fixtures::synthetic_builtin_table(dim, seed), out);
    return exit_code::kOk;
  }
  fixtures::PlantedOptions options;
  options.dimension = dim;
  options.seed = seed;
  options.grammatical = 1.0;
  const auto fixture = fixtures::planted(options);
  write_embeddings_file(fixture.table, out);
  if (!suite_out.empty()) write_text(suite_out, dump_suite({fixture.bm, fixture.me}));
  return exit_code::kOk;
}

int cmd_dump(const std::string& what, const std::string& out) {
  if (what == "suite-builtin") write_text(out, dump_suite(builtin::suites()));
  else if (what == "suite-translated") write_text(out, dump_suite(builtin::translated_suites()));
  else if (what == "templates-builtin") write_text(out, dump_templates(builtin_templates()));
  else if (what == "templates-identity") write_text(out, dump_templates(identity_templates()));
  return exit_code::kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Association tests, bias directions and debiasing for word embeddings"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  Common c;
  SeatFlags seat_flags;
  std::string spec_path;
  std::string plan_path;
  std::string report_path;
  std::string synth_kind = "builtin";
  std::size_t synth_dim = 50;
  std::uint64_t synth_seed = 42;
  std::string synth_suite_out;
  std::string dump_what;

  auto* weat = app.add_subcommand("weat", "run word-level association tests");
  add_table_flags(weat, c, true);
  add_test_flags(weat, c);
  add_output_flags(weat, c);

  auto* seat = app.add_subcommand("seat", "run sentence-level association tests");
  add_table_flags(seat, c, false);
  add_test_flags(seat, c);
  add_output_flags(seat, c);
  seat->add_option("--templates", seat_flags.templates, "template file, 'builtin' or 'identity'");
  seat->add_option("--precomputed", seat_flags.precomputed, "TSV of sentence<TAB>vector");
  seat->add_option("--emit-sentences", seat_flags.emit_sentences, "write expanded sentences and exit");
  seat->add_option("--expand-attributes", seat_flags.expand_attributes, "expand attribute lists too");

  auto* subspace = app.add_subcommand("subspace", "compute labeled bias directions");
  add_table_flags(subspace, c, true);
  subspace->add_option("--spec", spec_path, "direction spec file")->required();
  subspace->add_option("--out", c.out, "direction file (GloVe text)")->required();

  auto* debias = app.add_subcommand("debias", "debias a table and compare suites before and after");
  add_table_flags(debias, c, true);
  add_test_flags(debias, c);
  debias->add_option("--plan", plan_path, "debias plan file")->required();
  debias->add_option("--out", c.out, "debiased embeddings (GloVe text)")->required();
  debias->add_option("--report", report_path, "comparison report path (default: stdout)");
  debias->add_option("--format", c.format, "json | md")->check(CLI::IsMember({"json", "md"}));

  auto* synth = app.add_subcommand("synth", "write a synthetic embedding table");
  synth->add_option("--out", c.out, "output file")->required();
  synth->add_option("--kind", synth_kind, "builtin | planted")->check(CLI::IsMember({"builtin", "planted"}));
  synth->add_option("--dim", synth_dim, "dimension")->check(CLI::Range(std::size_t{2}, std::size_t{4096}));
  synth->add_option("--seed", synth_seed, "noise seed");
  synth->add_option("--suite-out", synth_suite_out, "planted kind: also write its suite");

  auto* dump = app.add_subcommand("dump", "print bundled suites or templates as JSON");
  dump->add_option("what", dump_what, "suite-builtin | suite-translated | templates-builtin | templates-identity")
      ->required()
      ->check(CLI::IsMember({"suite-builtin", "suite-translated", "templates-builtin", "templates-identity"}));
  dump->add_option("--out", c.out, "output file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_code::kUsage;
  }

  try {
    if (*weat) return cmd_weat(c);
    if (*seat) return cmd_seat(c, seat_flags);
    if (*subspace) return cmd_subspace(c, spec_path);
    if (*debias) return cmd_debias(c, plan_path, report_path);
    if (*synth) return cmd_synth(c.out, synth_kind, synth_dim, synth_seed, synth_suite_out);
    if (*dump) return cmd_dump(dump_what, c.out);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return exit_code::kUsage;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return exit_code::kData;
  } catch (const ComputationError& e) {
    std::cerr << "computation error: " << e.what() << "\n";
    return exit_code::kComputation;
  }
  return exit_code::kUsage;
}
