// owl2fl: translate between OWL RDF/XML and F-logic, check integrity
// constraints and answer queries over the saturated knowledge base.

#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "owl2fl/cli/commands.hpp"

namespace {

using owl2fl::cli::Format;

const std::map<std::string, Format> kFormats = {{"owl", Format::Owl}, {"flora", Format::Flora}};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bidirectional OWL / F-logic translator and rule engine"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "owl2fl 1.0.0");

  owl2fl::cli::TranslateOptions topts;
  bool no_checkers = false;
  bool no_case_split = false;
  auto* translate = app.add_subcommand("translate", "Translate OWL to F-logic or back");
  translate->add_option("--from", topts.from, "Input format")
      ->required()
      ->transform(CLI::CheckedTransformer(kFormats, CLI::ignore_case));
  translate->add_option("--to", topts.to, "Output format")
      ->required()
      ->transform(CLI::CheckedTransformer(kFormats, CLI::ignore_case));
  translate->add_option("input", topts.input, "Input file")->required();
  translate->add_option("-o,--output", topts.output, "Output file")->required();
  translate->add_flag("--no-checkers", no_checkers, "Omit the integrity checker rules");
  translate->add_flag("--owl-domain-range-rules", topts.translation.owl_domain_range_rules,
                      "Also derive memberships from property domains and ranges");
  translate->add_flag("--no-case-split", no_case_split, "Reject a union on the right instead of splitting it");

  std::vector<std::string> check_paths;
  owl2fl::engine::EngineOptions check_opts;
  auto* check = app.add_subcommand("check", "Run every integrity checker over the saturated KB");
  check->add_option("kb", check_paths, "Knowledge base files (.owl or .flr)")->required();
  check->add_flag("--min-cardinality", check_opts.check_min_cardinality, "Also report minimum cardinality shortfalls");

  std::vector<std::string> query_words;
  bool most_specific = false;
  bool most_general = false;
  auto* query = app.add_subcommand("query", "Answer one query: <kb...> <verb> <args>");
  query->add_option("words", query_words, "Knowledge base files, then the query verb and its arguments")->required();
  query->add_flag("--most-specific", most_specific, "superclasses: drop classes inherited through another one");
  query->add_flag("--most-general", most_general, "subclasses: drop classes reached through another one");
  query->footer("Verbs: is <ind> <class> | instances <class> | classes-of <ind> | subclass <C> <D> |\n"
                "       superclasses <C> | subclasses <C> | check");

  std::string insert_path;
  std::string insert_fact;
  auto* insert = app.add_subcommand("insert", "Insert a ground fact and print how many facts it added");
  insert->add_option("kb", insert_path, "Knowledge base file")->required();
  insert->add_option("fact", insert_fact, "Ground fact, e.g. \"Merlot:Wine\"")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : owl2fl::cli::kExitError;
  }

  if (translate->parsed()) {
    topts.translation.emit_checkers = !no_checkers;
    topts.translation.case_split_rhs_disjunction = !no_case_split;
    return owl2fl::cli::cmd_translate(topts, std::cerr);
  }
  if (check->parsed()) return owl2fl::cli::cmd_check(check_paths, check_opts, std::cout, std::cerr);
  if (insert->parsed()) return owl2fl::cli::cmd_insert(insert_path, insert_fact, {}, std::cout, std::cerr);

  // The first verb after at least one file splits files from arguments.
  std::size_t split = 1;
  while (split < query_words.size() && !owl2fl::cli::is_query_verb(query_words[split])) ++split;
  owl2fl::Diagnostics diags;
  if (split >= query_words.size()) {
    diags.push_back(owl2fl::make_diagnostic(owl2fl::Severity::Error, owl2fl::codes::kSyntaxError,
                                            "expected a query verb after the knowledge base files"));
  }
  std::optional<owl2fl::cli::QueryRequest> req;
  if (diags.empty()) {
    std::vector<std::string> files(query_words.begin(), query_words.begin() + static_cast<std::ptrdiff_t>(split));
    std::vector<std::string> args(query_words.begin() + static_cast<std::ptrdiff_t>(split) + 1, query_words.end());
    req = owl2fl::cli::parse_query_request(query_words[split], args, most_specific, most_general, diags);
    if (req) return owl2fl::cli::cmd_query(files, *req, {}, std::cout, std::cerr);
  }
  for (const auto& d : diags) owl2fl::print_diagnostic(std::cerr, d);
  return owl2fl::cli::kExitError;
}
