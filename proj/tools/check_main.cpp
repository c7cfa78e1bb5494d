// opcheck: check a derivation tree JSON file offline and print the feedback.

#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "oprover/calculus.hpp"
#include "oprover/checker.hpp"

namespace {

void print_node(const oprover::AnnotatedNode& n, int indent) {
  for (const auto& p : n.premises) print_node(p, indent + 2);
  std::cout << std::string(indent, ' ') << "[" << oprover::to_string(n.formula_status.kind) << "/"
            << oprover::to_string(n.rule_status.kind) << "] " << n.formula_text;
  if (!n.rule_text.empty()) std::cout << "    (" << n.rule_text << ")";
  std::cout << "\n";
  if (auto m = n.message()) std::cout << std::string(indent + 4, ' ') << "! " << *m << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Check a derivation tree"};
  std::string file;
  bool as_json = false;
  bool rules = false;
  app.add_option("tree", file, "tree JSON file ({\"goal\", \"root\"}); '-' reads stdin");
  app.add_flag("--json", as_json, "print the annotated tree as JSON");
  app.add_flag("--rules", rules, "list the rule catalog and exit");
  CLI11_PARSE(app, argc, argv);

  if (rules) {
    for (const auto& r : oprover::rule_catalog()) std::cout << r.surface << "\t" << r.schema << "\n";
    return EXIT_SUCCESS;
  }
  if (file.empty()) {
    std::cerr << "no tree file given\n";
    return EXIT_FAILURE;
  }

  nlohmann::json doc;
  if (file == "-") {
    doc = nlohmann::json::parse(std::cin, nullptr, false);
  } else {
    std::ifstream in(file);
    doc = nlohmann::json::parse(in, nullptr, false);
  }
  if (doc.is_discarded()) {
    std::cerr << file << ": not valid JSON\n";
    return EXIT_FAILURE;
  }
  auto tree = oprover::decode_tree(doc);
  if (!tree) {
    std::cerr << file << ": " << tree.error().describe() << "\n";
    return EXIT_FAILURE;
  }
  auto result = oprover::check_tree(*tree);
  if (as_json) {
    std::cout << oprover::encode_annotated(result.tree).dump(2) << "\n";
  } else {
    print_node(result.tree.root, 0);
  }
  std::cout << "outcome: " << oprover::to_string(result.outcome) << "\n";
  return result.outcome == oprover::ProofOutcome::Complete ? EXIT_SUCCESS : 2;
}
