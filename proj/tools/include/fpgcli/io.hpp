#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "fpg/certificate.hpp"
#include "fpg/freeprod.hpp"
#include "fpg/kurosh.hpp"
#include "fpg/verify.hpp"

namespace fpg::cli {

using Json = nlohmann::ordered_json;

/// Optional overrides of the pipeline limits; unset fields keep their defaults.
struct BoundsPatch {
  std::optional<std::size_t> max_cosets;
  std::optional<std::size_t> tree_word_bound;
  std::optional<std::uint32_t> tree_retries;
  std::optional<std::size_t> free_test_len;
  std::optional<std::uint64_t> seed;

  void apply(Bounds& b) const;
};

/// A parsed input file. `b_factors` and `theta` may be absent for commands
/// that only look at G and H.
struct SystemFile {
  std::vector<FiniteGroup> g_factors;
  std::optional<std::vector<FiniteGroup>> b_factors;
  std::optional<std::vector<std::vector<Elem>>> theta;
  std::vector<std::string> subgroup;
  BoundsPatch bounds;

  /// Throws Error{InvalidInput} when B or θ is missing, plus the FactorSystem errors.
  FactorSystem system() const;
  FreeProduct g() const { return FreeProduct(g_factors); }
  std::vector<Word> subgroup_words(const FreeProduct& g) const;
};

/// Accepts a table (list of rows) or one of "trivial", "cyclic n", "sym n".
FiniteGroup parse_group(const Json& j);

/// Throws Error{InvalidInput} (and fingroup errors) on malformed input.
SystemFile parse_system(const Json& j);
SystemFile read_system_file(const std::string& path);

Json read_json_file(const std::string& path);
/// Pretty-printed with a trailing newline.
std::string dump(const Json& j);

std::string to_string(Route r);

Json to_json(const ConjectureCertificate& cert);
/// Words are parsed over sys.g(). Throws Error{MalformedCertificate|MalformedWord}.
ConjectureCertificate certificate_from_json(const FreeProduct& g, const Json& j);

Json to_json(const KuroshDecomposition& d);
Json to_json(const VerificationReport& r);

/// One line per check and a final verdict line.
std::string report_text(const VerificationReport& r);

}  // namespace fpg::cli
