#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "fpgcli/commands.hpp"

int main(int argc, char** argv) {
  using namespace fpg::cli;

  CLI::App app{"Subgroups of free products of finite groups: Kurosh and Higgins decompositions"};
  app.require_subcommand(1);

  Options opt;
  std::size_t max_cosets = 0, tree_word_bound = 0, free_test_len = 0;
  std::uint32_t tree_retries = 0;
  std::uint64_t seed = 0;
  std::string system, cert, word;

  auto common = [&](CLI::App* sub) {
    sub->add_option("system", system, "System file (JSON)")->required()->check(CLI::ExistingFile);
    sub->add_option("--max-cosets", max_cosets, "Coset enumeration limit (default 10000)");
    sub->add_option("--tree-word-bound", tree_word_bound, "Theta-trivial tree search bound (default 12)");
    sub->add_option("--tree-retries", tree_retries, "Extra tree variants tried (default 8)");
    sub->add_option("--free-test-len", free_test_len, "Word length L of the freeness test (default 8)");
    sub->add_option("--seed", seed, "Seed for sampled checks");
    sub->add_option("-o,--output", opt.output, "Write the result here instead of stdout");
  };

  auto* decompose = app.add_subcommand("decompose", "Decompose H, write the certificate, verify it");
  common(decompose);
  decompose->add_option("--dot", opt.dot, "Also write the coset graph of H as DOT");

  auto* kurosh = app.add_subcommand("kurosh", "Kurosh decomposition of H (ignores B and theta)");
  common(kurosh);
  kurosh->add_option("--dot", opt.dot, "Also write the coset graph of H as DOT");

  auto* verify = app.add_subcommand("verify", "Check a certificate against a system");
  common(verify);
  verify->add_option("certificate", cert, "Certificate file (JSON)")->required()->check(CLI::ExistingFile);
  verify->add_flag("--json", opt.json, "JSON report instead of text");

  auto* graph = app.add_subcommand("graph", "Core graph of H as DOT");
  common(graph);
  graph->add_flag("--complete", opt.complete, "Complete to the full coset table first");
  graph->add_option("--dot", opt.dot, "Also write the DOT text to this path");

  auto* normalform = app.add_subcommand("normalform", "Normal form of a word over G");
  common(normalform);
  normalform->add_option("word", word, "Word in 'factor:elem ...' syntax")->required();

  auto* member = app.add_subcommand("member", "Is the word in H?");
  common(member);
  member->add_option("word", word, "Word in 'factor:elem ...' syntax")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInvalidInput;
  }

  auto* sub = app.get_subcommands().front();
  if (sub->count("--max-cosets")) opt.bounds.max_cosets = max_cosets;
  if (sub->count("--tree-word-bound")) opt.bounds.tree_word_bound = tree_word_bound;
  if (sub->count("--tree-retries")) opt.bounds.tree_retries = tree_retries;
  if (sub->count("--free-test-len")) opt.bounds.free_test_len = free_test_len;
  if (sub->count("--seed")) opt.bounds.seed = seed;

  if (sub == decompose) return cmd_decompose(system, opt, std::cout, std::cerr);
  if (sub == kurosh) return cmd_kurosh(system, opt, std::cout, std::cerr);
  if (sub == verify) return cmd_verify(system, cert, opt, std::cout, std::cerr);
  if (sub == graph) return cmd_graph(system, opt, std::cout, std::cerr);
  if (sub == normalform) return cmd_normalform(system, word, opt, std::cout, std::cerr);
  return cmd_member(system, word, opt, std::cout, std::cerr);
}
