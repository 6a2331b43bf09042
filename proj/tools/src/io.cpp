#include "fpgcli/io.hpp"

#include <fstream>
#include <sstream>

#include "fpg/error.hpp"

namespace fpg::cli {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::InvalidInput, what); }

[[noreturn]] void bad_cert(const std::string& what) { throw Error(ErrorKind::MalformedCertificate, what); }

const Json& field(const Json& j, const char* key, bool cert = false) {
  if (!j.is_object() || !j.contains(key)) {
    const std::string msg = std::string("missing field '") + key + "'";
    if (cert) bad_cert(msg);
    bad(msg);
  }
  return j.at(key);
}

template <class T>
T number(const Json& j, const char* what) {
  if (!j.is_number_unsigned()) bad(std::string(what) + " must be a non-negative integer");
  return j.get<T>();
}

std::vector<Elem> elem_list(const Json& j, const char* what) {
  if (!j.is_array()) bad(std::string(what) + " must be a list");
  std::vector<Elem> out;
  for (const auto& e : j) out.push_back(number<Elem>(e, what));
  return out;
}

std::vector<FiniteGroup> group_list(const Json& j, const char* what) {
  if (!j.is_array()) bad(std::string(what) + " must be a list");
  std::vector<FiniteGroup> out;
  for (const auto& g : j) out.push_back(parse_group(g));
  return out;
}

Json words(const std::vector<Word>& ws) {
  Json a = Json::array();
  for (const Word& w : ws) a.push_back(format_word(w));
  return a;
}

std::vector<Word> words_from(const FreeProduct& g, const Json& j, const char* what) {
  if (!j.is_array()) bad_cert(std::string(what) + " must be a list of words");
  std::vector<Word> out;
  for (const auto& w : j) {
    if (!w.is_string()) bad_cert(std::string(what) + " must be a list of words");
    out.push_back(g.parse(w.get<std::string>()));
  }
  return out;
}

template <class T>
T cert_number(const Json& j, const char* what) {
  if (!j.is_number_unsigned()) bad_cert(std::string(what) + " must be a non-negative integer");
  return j.get<T>();
}

std::vector<Elem> cert_elems(const Json& j, const char* what) {
  if (!j.is_array()) bad_cert(std::string(what) + " must be a list");
  std::vector<Elem> out;
  for (const auto& e : j) out.push_back(cert_number<Elem>(e, what));
  return out;
}

}  // namespace

void BoundsPatch::apply(Bounds& b) const {
  if (max_cosets) b.max_cosets = *max_cosets;
  if (tree_word_bound) b.tree_word_bound = *tree_word_bound;
  if (tree_retries) b.tree_retries = *tree_retries;
  if (free_test_len) b.free_test_len = *free_test_len;
  if (seed) b.seed = *seed;
}

FiniteGroup parse_group(const Json& j) {
  if (j.is_string()) {
    std::istringstream in(j.get<std::string>());
    std::string kind;
    in >> kind;
    if (kind == "trivial") return FiniteGroup::trivial();
    long long n = 0;
    if (!(in >> n) || n <= 0 || !(in >> std::ws).eof()) bad("bad group shorthand '" + j.get<std::string>() + "'");
    if (kind == "cyclic") return FiniteGroup::cyclic(static_cast<std::uint32_t>(n));
    if (kind == "sym") return FiniteGroup::sym(static_cast<std::uint32_t>(n));
    bad("unknown group shorthand '" + kind + "'");
  }
  if (!j.is_array()) bad("a group is a table or a shorthand string");
  std::vector<std::vector<Elem>> table;
  for (const auto& row : j) table.push_back(elem_list(row, "table row"));
  return FiniteGroup::from_table(table);
}

SystemFile parse_system(const Json& j) {
  if (!j.is_object()) bad("system file must be a JSON object");
  SystemFile s;
  s.g_factors = group_list(field(j, "factors_G"), "factors_G");
  if (s.g_factors.empty()) bad("factors_G is empty");
  if (j.contains("factors_B")) s.b_factors = group_list(j.at("factors_B"), "factors_B");
  if (j.contains("theta")) {
    const Json& t = j.at("theta");
    if (!t.is_array()) bad("theta must be a list of maps");
    s.theta.emplace();
    for (const auto& m : t) s.theta->push_back(elem_list(m, "theta map"));
  }
  if (j.contains("subgroup")) {
    const Json& h = j.at("subgroup");
    if (!h.is_array()) bad("subgroup must be a list of words");
    for (const auto& w : h) {
      if (!w.is_string()) bad("subgroup words are strings in 'factor:elem' syntax");
      s.subgroup.push_back(w.get<std::string>());
    }
  }
  if (j.contains("bounds")) {
    const Json& b = j.at("bounds");
    if (!b.is_object()) bad("bounds must be an object");
    for (const auto& [key, v] : b.items()) {
      if (key == "max_cosets") s.bounds.max_cosets = number<std::size_t>(v, "max_cosets");
      else if (key == "tree_word_bound") s.bounds.tree_word_bound = number<std::size_t>(v, "tree_word_bound");
      else if (key == "tree_retries") s.bounds.tree_retries = number<std::uint32_t>(v, "tree_retries");
      else if (key == "free_test_len") s.bounds.free_test_len = number<std::size_t>(v, "free_test_len");
      else if (key == "seed") s.bounds.seed = number<std::uint64_t>(v, "seed");
      else bad("unknown bound '" + key + "'");
    }
  }
  return s;
}

FactorSystem SystemFile::system() const {
  if (!b_factors || !theta) bad("factors_B and theta are required for this command");
  return FactorSystem(g_factors, *b_factors, *theta);
}

std::vector<Word> SystemFile::subgroup_words(const FreeProduct& g) const {
  std::vector<Word> out;
  for (const auto& s : subgroup) out.push_back(g.parse(s));
  return out;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    bad("'" + path + "' is not valid JSON: " + e.what());
  }
}

SystemFile read_system_file(const std::string& path) { return parse_system(read_json_file(path)); }

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string to_string(Route r) { return r == Route::HigginsTree ? "higgins_tree" : "kurosh_moves"; }

Json to_json(const ConjectureCertificate& cert) {
  Json j;
  j["system_hash"] = cert.system_hash;
  j["subgroup_gens"] = words(cert.subgroup_gens);
  j["index"] = cert.index;
  j["route"] = to_string(cert.route);
  j["tree_variant"] = cert.tree_variant;
  j["transversal"] = words(cert.transversal);
  Json fs = Json::array();
  for (const auto& fc : cert.factors) {
    Json f;
    f["lambda"] = fc.lambda;
    f["h_gens"] = words(fc.h_gens);
    f["betas"] = words(fc.betas);
    f["beta_primes"] = words(fc.beta_primes);
    f["g_corrections"] = fc.g_corrections;
    f["reps"] = words(fc.reps);
    f["stabilizers"] = fc.stabilizers;
    Json vgs = Json::array();
    for (const auto& vg : fc.vertex_groups) vgs.push_back(words(vg));
    f["vertex_groups"] = vgs;
    f["free_basis"] = words(fc.free_basis);
    fs.push_back(f);
  }
  j["factors"] = fs;
  return j;
}

ConjectureCertificate certificate_from_json(const FreeProduct& g, const Json& j) {
  if (!j.is_object()) bad_cert("certificate must be a JSON object");
  ConjectureCertificate c;
  const Json& hash = field(j, "system_hash", true);
  if (!hash.is_string()) bad_cert("system_hash must be a string");
  c.system_hash = hash.get<std::string>();
  c.subgroup_gens = words_from(g, field(j, "subgroup_gens", true), "subgroup_gens");
  c.index = cert_number<std::size_t>(field(j, "index", true), "index");
  const Json& route = field(j, "route", true);
  if (route == "higgins_tree") c.route = Route::HigginsTree;
  else if (route == "kurosh_moves") c.route = Route::KuroshMoves;
  else bad_cert("unknown route");
  c.tree_variant = cert_number<std::uint32_t>(field(j, "tree_variant", true), "tree_variant");
  c.transversal = words_from(g, field(j, "transversal", true), "transversal");
  const Json& fs = field(j, "factors", true);
  if (!fs.is_array()) bad_cert("factors must be a list");
  for (const auto& f : fs) {
    FactorCertificate fc;
    fc.lambda = cert_number<Factor>(field(f, "lambda", true), "lambda");
    fc.h_gens = words_from(g, field(f, "h_gens", true), "h_gens");
    fc.betas = words_from(g, field(f, "betas", true), "betas");
    fc.beta_primes = words_from(g, field(f, "beta_primes", true), "beta_primes");
    fc.g_corrections = cert_elems(field(f, "g_corrections", true), "g_corrections");
    fc.reps = words_from(g, field(f, "reps", true), "reps");
    const Json& stabs = field(f, "stabilizers", true);
    if (!stabs.is_array()) bad_cert("stabilizers must be a list");
    for (const auto& s : stabs) fc.stabilizers.push_back(cert_elems(s, "stabilizer"));
    const Json& vgs = field(f, "vertex_groups", true);
    if (!vgs.is_array()) bad_cert("vertex_groups must be a list");
    for (const auto& vg : vgs) fc.vertex_groups.push_back(words_from(g, vg, "vertex group"));
    fc.free_basis = words_from(g, field(f, "free_basis", true), "free_basis");
    c.factors.push_back(std::move(fc));
  }
  return c;
}

Json to_json(const KuroshDecomposition& d) {
  Json j;
  Json ps = Json::array();
  for (const auto& p : d.pieces) {
    Json pj;
    pj["lambda"] = p.lambda;
    pj["rep"] = format_word(p.rep);
    pj["stabilizer"] = p.stabilizer;
    pj["vertex_group"] = words(p.vertex_group);
    ps.push_back(pj);
  }
  j["pieces"] = ps;
  j["free_basis"] = words(d.free_basis);
  j["free_rank"] = d.free_rank;
  return j;
}

Json to_json(const VerificationReport& r) {
  Json j;
  j["verdict"] = r.passed() ? "pass" : "fail";
  Json cs = Json::array();
  for (const auto& c : r.checks) {
    Json cj;
    cj["name"] = c.name;
    cj["status"] = std::string(to_string(c.status));
    cj["details"] = c.details;
    cj["elapsed_ms"] = c.elapsed_ms;
    cs.push_back(cj);
  }
  j["checks"] = cs;
  return j;
}

std::string report_text(const VerificationReport& r) {
  std::ostringstream out;
  for (const auto& c : r.checks) {
    out << c.name << "  " << to_string(c.status);
    if (!c.details.empty()) out << "  " << c.details;
    out << "\n";
  }
  out << "verdict: " << (r.passed() ? "pass" : "fail") << "\n";
  return out.str();
}

}  // namespace fpg::cli
