#include "fpg/freeprod.hpp"

#include <charconv>
#include <cstdio>
#include <sstream>

#include "fpg/error.hpp"

namespace fpg {

Word Word::syllable(Factor f, Elem e) {
  Word w;
  if (e != 0) w.syl_.push_back({f, e});
  return w;
}

FreeProduct::FreeProduct(std::vector<FiniteGroup> factors) : factors_(std::move(factors)) {
  if (factors_.empty()) throw Error(ErrorKind::InvalidInput, "free product needs at least one factor");
}

void FreeProduct::push(Word& w, Factor f, Elem e) const {
  if (f >= factors_.size() || e >= factors_[f].order())
    throw Error(ErrorKind::MalformedWord, "syllable " + std::to_string(f) + ":" + std::to_string(e) + " out of range");
  if (e == 0) return;
  auto& s = w.syl_;
  if (!s.empty() && s.back().factor == f) {
    const Elem m = factors_[f].mul(s.back().elem, e);
    if (m == 0)
      s.pop_back();
    else
      s.back().elem = m;
  } else {
    s.push_back({f, e});
  }
}

Word FreeProduct::normalize(const std::vector<Syllable>& raw) const {
  Word w;
  for (const auto& s : raw) push(w, s.factor, s.elem);
  return w;
}

Word FreeProduct::multiply(const Word& u, const Word& v) const {
  // Cancellation only happens at the seam; once it stops the remainder of v
  // is already alternating against what is left of u.
  Word w = u;
  const auto& vs = v.syl_;
  std::size_t i = 0;
  while (i < vs.size() && !w.syl_.empty() && w.syl_.back().factor == vs[i].factor) {
    const Elem m = factors_[vs[i].factor].mul(w.syl_.back().elem, vs[i].elem);
    ++i;
    if (m != 0) {
      w.syl_.back().elem = m;
      break;
    }
    w.syl_.pop_back();
  }
  w.syl_.insert(w.syl_.end(), vs.begin() + static_cast<std::ptrdiff_t>(i), vs.end());
  return w;
}

Word FreeProduct::invert(const Word& w) const {
  Word r;
  r.syl_.reserve(w.size());
  for (auto it = w.syl_.rbegin(); it != w.syl_.rend(); ++it)
    r.syl_.push_back({it->factor, factors_.at(it->factor).inv(it->elem)});
  return r;
}

Word FreeProduct::conjugate(const Word& w, const Word& x) const {
  return multiply(multiply(invert(x), w), x);
}

Word FreeProduct::parse(std::string_view text) const {
  std::vector<Syllable> raw;
  std::size_t pos = 0;
  auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; };
  while (pos < text.size()) {
    while (pos < text.size() && is_space(text[pos])) ++pos;
    if (pos == text.size()) break;
    std::size_t end = pos;
    while (end < text.size() && !is_space(text[end])) ++end;
    const std::string_view tok = text.substr(pos, end - pos);
    const auto colon = tok.find(':');
    if (colon == std::string_view::npos || colon == 0 || colon + 1 == tok.size())
      throw Error(ErrorKind::MalformedWord, "bad token '" + std::string(tok) + "'");
    Factor f{};
    Elem e{};
    auto r1 = std::from_chars(tok.data(), tok.data() + colon, f);
    auto r2 = std::from_chars(tok.data() + colon + 1, tok.data() + tok.size(), e);
    if (r1.ec != std::errc{} || r1.ptr != tok.data() + colon || r2.ec != std::errc{} ||
        r2.ptr != tok.data() + tok.size())
      throw Error(ErrorKind::MalformedWord, "bad token '" + std::string(tok) + "'");
    raw.push_back({f, e});
    pos = end;
  }
  return normalize(raw);
}

std::string format_word(const Word& w) {
  std::string out;
  for (const auto& s : w.syllables()) {
    if (!out.empty()) out += ' ';
    out += std::to_string(s.factor);
    out += ':';
    out += std::to_string(s.elem);
  }
  return out;
}

namespace {

std::vector<GroupHom> make_thetas(const std::vector<FiniteGroup>& g, const std::vector<FiniteGroup>& b,
                                  std::vector<std::vector<Elem>> maps) {
  if (g.size() != b.size() || g.size() != maps.size())
    throw Error(ErrorKind::InvalidInput, "G, B and theta must have the same number of factors");
  std::vector<GroupHom> out;
  for (std::size_t i = 0; i < g.size(); ++i) {
    GroupHom h(g[i], b[i], std::move(maps[i]));
    if (!h.is_surjective())
      throw Error(ErrorKind::NotSurjective, "theta_" + std::to_string(i) + " is not surjective");
    out.push_back(std::move(h));
  }
  return out;
}

}  // namespace

FactorSystem::FactorSystem(std::vector<FiniteGroup> g_factors, std::vector<FiniteGroup> b_factors,
                           std::vector<std::vector<Elem>> theta_maps)
    : g_(g_factors), b_(b_factors), theta_(make_thetas(g_factors, b_factors, std::move(theta_maps))) {}

FactorSystem FactorSystem::identity(std::vector<FiniteGroup> factors) {
  std::vector<std::vector<Elem>> maps;
  for (const auto& f : factors) {
    std::vector<Elem> m(f.order());
    for (Elem i = 0; i < f.order(); ++i) m[i] = i;
    maps.push_back(std::move(m));
  }
  return FactorSystem(factors, factors, std::move(maps));
}

Word FactorSystem::theta_word(const Word& w) const {
  Word out;
  for (const auto& s : w.syllables()) b_.push(out, s.factor, theta_[s.factor](s.elem));
  return out;
}

namespace {

struct Fnv {
  std::uint64_t h = 1469598103934665603ull;
  void add(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (8 * i)) & 0xffu;
      h *= 1099511628211ull;
    }
  }
};

}  // namespace

std::string FactorSystem::hash() const {
  Fnv f;
  f.add(rank());
  for (Factor i = 0; i < rank(); ++i) {
    for (const auto* grp : {&g_.factor(i), &b_.factor(i)}) {
      f.add(grp->order());
      for (Elem x = 0; x < grp->order(); ++x)
        for (Elem y = 0; y < grp->order(); ++y) f.add(grp->mul(x, y));
    }
    for (Elem e : theta_[i].map()) f.add(e);
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(f.h));
  return buf;
}

std::size_t WordHash::operator()(const Word& w) const noexcept {
  std::uint64_t h = 1469598103934665603ull;
  for (const auto& s : w.syllables()) {
    h ^= (static_cast<std::uint64_t>(s.factor) << 32) | s.elem;
    h *= 1099511628211ull;
    h ^= h >> 29;
  }
  return static_cast<std::size_t>(h);
}

}  // namespace fpg
