#include "gemsample/permutation.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <numeric>
#include <stdexcept>

#include "gemsample/random.hpp"

namespace gemsample {

namespace {

void check_bijection(std::span<const Element> images) {
  if (images.empty())
    throw std::invalid_argument("permutation degree must be >= 1");
  std::vector<bool> seen(images.size(), false);
  for (Element v : images) {
    if (v >= images.size() || seen[v])
      throw std::invalid_argument("image sequence is not a bijection on [n]");
    seen[v] = true;
  }
}

} // namespace

Permutation::Permutation(std::vector<Element> images)
    : images_(std::move(images)) {
  check_bijection(images_);
}

Permutation Permutation::identity(std::size_t n) {
  if (n == 0)
    throw std::invalid_argument("permutation degree must be >= 1");
  std::vector<Element> images(n);
  std::iota(images.begin(), images.end(), Element{0});
  return Permutation(std::move(images), Unchecked{});
}

Permutation
Permutation::from_cycles(std::size_t n,
                         std::span<const std::vector<Element>> cycle_list) {
  if (n == 0)
    throw std::invalid_argument("permutation degree must be >= 1");
  std::vector<Element> images(n);
  std::iota(images.begin(), images.end(), Element{0});
  std::vector<bool> used(n, false);
  for (const auto &cycle : cycle_list) {
    for (std::size_t k = 0; k < cycle.size(); ++k) {
      Element x = cycle[k];
      if (x >= n || used[x])
        throw std::invalid_argument("cycles are not disjoint elements of [n]");
      used[x] = true;
      images[x] = cycle[(k + 1) % cycle.size()];
    }
  }
  return Permutation(std::move(images), Unchecked{});
}

bool Permutation::is_identity() const noexcept {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != i)
      return false;
  return true;
}

CycleStructure::CycleStructure(std::map<std::size_t, std::size_t> counts)
    : counts_(std::move(counts)) {
  for (auto [len, mult] : counts_)
    if (len == 0 || mult == 0)
      throw std::invalid_argument(
          "cycle structure entries must have positive length and count");
}

std::size_t CycleStructure::degree() const noexcept {
  std::size_t n = 0;
  for (auto [len, mult] : counts_)
    n += len * mult;
  return n;
}

std::size_t CycleStructure::num_cycles() const noexcept {
  std::size_t k = 0;
  for (auto [len, mult] : counts_)
    k += mult;
  return k;
}

Permutation compose(const Permutation &a, const Permutation &b) {
  if (a.degree() != b.degree())
    throw std::invalid_argument("compose: degree mismatch");
  std::vector<Element> images(a.degree());
  for (std::size_t i = 0; i < images.size(); ++i)
    images[i] = a.images_[b.images_[i]];
  return Permutation(std::move(images), Permutation::Unchecked{});
}

Permutation inverse(const Permutation &a) {
  std::vector<Element> images(a.degree());
  for (std::size_t i = 0; i < images.size(); ++i)
    images[a.images_[i]] = static_cast<Element>(i);
  return Permutation(std::move(images), Permutation::Unchecked{});
}

Permutation conjugate(const Permutation &a, const Permutation &p) {
  if (a.degree() != p.degree())
    throw std::invalid_argument("conjugate: degree mismatch");
  // (p a p^-1)(p(i)) = p(a(i))
  std::vector<Element> images(a.degree());
  for (std::size_t i = 0; i < images.size(); ++i)
    images[p.images_[i]] = p.images_[a.images_[i]];
  return Permutation(std::move(images), Permutation::Unchecked{});
}

std::vector<std::vector<Element>> cycles(const Permutation &a) {
  std::vector<std::vector<Element>> out;
  std::vector<bool> seen(a.degree(), false);
  for (Element start = 0; start < a.degree(); ++start) {
    if (seen[start])
      continue;
    auto &cycle = out.emplace_back();
    for (Element x = start; !seen[x]; x = a(x)) {
      seen[x] = true;
      cycle.push_back(x);
    }
  }
  return out;
}

std::size_t cycle_count(const Permutation &a) {
  std::size_t count = 0;
  std::vector<bool> seen(a.degree(), false);
  for (Element start = 0; start < a.degree(); ++start) {
    if (seen[start])
      continue;
    ++count;
    for (Element x = start; !seen[x]; x = a(x))
      seen[x] = true;
  }
  return count;
}

CycleStructure cycle_structure(const Permutation &a) {
  std::map<std::size_t, std::size_t> counts;
  for (const auto &c : cycles(a))
    ++counts[c.size()];
  return CycleStructure(std::move(counts));
}

Permutation sample_permutation(std::size_t n, RandomStream &rng) {
  if (n == 0)
    throw std::invalid_argument("permutation degree must be >= 1");
  std::vector<Element> images(n);
  std::iota(images.begin(), images.end(), Element{0});
  for (std::size_t i = n; i > 1; --i)
    std::swap(images[i - 1], images[rng.below(i)]);
  return Permutation(std::move(images), Permutation::Unchecked{});
}

std::string to_string(const Permutation &a) {
  std::string out;
  for (const auto &cycle : cycles(a)) {
    out += '(';
    for (std::size_t k = 0; k < cycle.size(); ++k) {
      if (k)
        out += ',';
      out += std::to_string(cycle[k]);
    }
    out += ')';
  }
  return out;
}

namespace {

std::vector<Element> parse_numbers(std::string_view text) {
  std::vector<Element> out;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    Element v = 0;
    auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + text.size(), v);
    if (ec != std::errc{})
      throw std::invalid_argument("malformed permutation text: '" +
                                  std::string(text) + "'");
    i = static_cast<std::size_t>(ptr - text.data());
    out.push_back(v);
  }
  return out;
}

} // namespace

Permutation parse_permutation(std::string_view text,
                              std::optional<std::size_t> degree) {
  auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos)
    throw std::invalid_argument("empty permutation text");
  text = text.substr(first, text.find_last_not_of(" \t\r\n") - first + 1);

  if (text.front() != '(') {
    auto images = parse_numbers(text);
    if (degree && *degree != images.size())
      throw std::invalid_argument("one-line permutation has wrong degree");
    return Permutation(std::move(images));
  }

  std::vector<std::vector<Element>> cycle_list;
  std::size_t pos = 0;
  Element max_elem = 0;
  while (pos < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[pos]))) {
      ++pos;
      continue;
    }
    if (text[pos] != '(')
      throw std::invalid_argument("expected '(' in cycle notation: '" +
                                  std::string(text) + "'");
    auto close = text.find(')', pos);
    if (close == std::string_view::npos)
      throw std::invalid_argument("unterminated cycle: '" + std::string(text) +
                                  "'");
    auto cycle = parse_numbers(text.substr(pos + 1, close - pos - 1));
    if (cycle.empty())
      throw std::invalid_argument("empty cycle");
    for (Element v : cycle)
      max_elem = std::max(max_elem, v);
    cycle_list.push_back(std::move(cycle));
    pos = close + 1;
  }
  std::size_t n = degree.value_or(static_cast<std::size_t>(max_elem) + 1);
  return Permutation::from_cycles(n, cycle_list);
}

} // namespace gemsample
