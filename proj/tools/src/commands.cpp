#include "fpgcli/commands.hpp"

#include <fstream>
#include <functional>
#include <ostream>

#include "fpg/conjecture.hpp"
#include "fpg/covgraph.hpp"
#include "fpg/error.hpp"
#include "fpg/kurosh.hpp"
#include "fpg/verify.hpp"

namespace fpg::cli {

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::IndexBoundExceeded:
    case ErrorKind::TreeBoundExceeded:
    case ErrorKind::GraphNotComplete:
      return kBoundExceeded;
    case ErrorKind::CrossFactorPieceNontrivial:
    case ErrorKind::BetaImageNotInFactor:
    case ErrorKind::NotFreeProduct:
      return kVerificationFailed;
    default:
      return kInvalidInput;
  }
}

namespace {

int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  }
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::InvalidInput, "cannot write '" + path + "'");
  f << text;
}

void emit(const Options& opt, std::ostream& out, const std::string& text) {
  if (opt.output.empty()) out << text;
  else write_file(opt.output, text);
}

Bounds bounds_for(const SystemFile& sf, const Options& opt) {
  Bounds b;
  sf.bounds.apply(b);
  opt.bounds.apply(b);
  return b;
}

}  // namespace

int cmd_decompose(const std::string& system_path, const Options& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const SystemFile sf = read_system_file(system_path);
    const FactorSystem sys = sf.system();
    const Bounds bounds = bounds_for(sf, opt);
    const auto gens = sf.subgroup_words(sys.g());

    const ConjectureCertificate cert = conjecture_decompose(sys, gens, bounds);
    emit(opt, out, dump(to_json(cert)));

    const CoreGraph graph = complete_graph(sys.g(), build_core(sys.g(), gens), bounds.max_cosets);
    if (!opt.dot.empty()) write_file(opt.dot, to_dot(graph));
    const VerificationReport report = verify_certificate(sys, graph, cert, bounds);
    err << report_text(report);
    return report.passed() ? kOk : kVerificationFailed;
  });
}

int cmd_kurosh(const std::string& system_path, const Options& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const SystemFile sf = read_system_file(system_path);
    const FreeProduct g = sf.g();
    const Bounds bounds = bounds_for(sf, opt);
    const auto gens = sf.subgroup_words(g);
    const CoreGraph graph = complete_graph(g, build_core(g, gens), bounds.max_cosets);
    if (!opt.dot.empty()) write_file(opt.dot, to_dot(graph));
    emit(opt, out, dump(to_json(kurosh_decompose(g, graph))));
    return kOk;
  });
}

int cmd_verify(const std::string& system_path, const std::string& cert_path, const Options& opt, std::ostream& out,
               std::ostream& err) {
  return guarded(err, [&] {
    const SystemFile sf = read_system_file(system_path);
    const FactorSystem sys = sf.system();
    const Bounds bounds = bounds_for(sf, opt);
    const ConjectureCertificate cert = certificate_from_json(sys.g(), read_json_file(cert_path));
    const VerificationReport report = verify_certificate(sys, sf.subgroup_words(sys.g()), cert, bounds);
    emit(opt, out, opt.json ? dump(to_json(report)) : report_text(report));
    return report.passed() ? kOk : kVerificationFailed;
  });
}

int cmd_graph(const std::string& system_path, const Options& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const SystemFile sf = read_system_file(system_path);
    const FreeProduct g = sf.g();
    const Bounds bounds = bounds_for(sf, opt);
    CoreGraph graph = build_core(g, sf.subgroup_words(g));
    if (opt.complete) graph = complete_graph(g, graph, bounds.max_cosets);
    const std::string dot = to_dot(graph);
    if (!opt.dot.empty()) write_file(opt.dot, dot);
    emit(opt, out, dot);
    return kOk;
  });
}

int cmd_normalform(const std::string& system_path, const std::string& word, const Options& opt, std::ostream& out,
                   std::ostream& err) {
  return guarded(err, [&] {
    const SystemFile sf = read_system_file(system_path);
    emit(opt, out, format_word(sf.g().parse(word)) + "\n");
    return kOk;
  });
}

int cmd_member(const std::string& system_path, const std::string& word, const Options& opt, std::ostream& out,
               std::ostream& err) {
  return guarded(err, [&] {
    const SystemFile sf = read_system_file(system_path);
    const FreeProduct g = sf.g();
    const CoreGraph graph = build_core(g, sf.subgroup_words(g));
    emit(opt, out, membership(graph, g.parse(word)) ? "true\n" : "false\n");
    return kOk;
  });
}

}  // namespace fpg::cli
