#include "crownkit/perm.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "crownkit/errors.hpp"

namespace crownkit {

Perm::Perm(Point degree) : images_(degree) {
  std::iota(images_.begin(), images_.end(), Point(0));
}

Perm::Perm(std::vector<Point> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (Point x : images_) {
    if (x >= images_.size() || seen[x])
      throw InputError("image array is not a bijection on {0.." +
                       std::to_string(images_.size() ? images_.size() - 1 : 0) + "}");
    seen[x] = true;
  }
}

Perm Perm::parse_cycles(std::string_view text, Point degree) {
  Perm result(degree);
  std::vector<bool> used(degree, false);

  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };

  skip_ws();
  if (i == text.size()) throw InputError("empty cycle string");

  while (i < text.size()) {
    skip_ws();
    if (i == text.size()) break;
    if (text[i] != '(') throw InputError("malformed cycle string: expected '('");
    ++i;

    std::vector<Point> cycle;
    while (true) {
      skip_ws();
      if (i == text.size()) throw InputError("malformed cycle string: unterminated cycle");
      if (text[i] == ')') {
        ++i;
        break;
      }
      if (!std::isdigit(static_cast<unsigned char>(text[i])))
        throw InputError("malformed cycle string: expected point or ')'");
      std::uint64_t v = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        v = v * 10 + (text[i] - '0');
        if (v > degree) throw InputError("cycle point " + std::to_string(v) + " exceeds degree");
        ++i;
      }
      if (v == 0) throw InputError("cycle points are 1-based; 0 is not a point");
      Point p = static_cast<Point>(v - 1);
      if (used[p]) throw InputError("repeated point " + std::to_string(v) + " in cycle string");
      used[p] = true;
      cycle.push_back(p);
    }
    for (std::size_t j = 0; j + 1 < cycle.size(); ++j) result.images_[cycle[j]] = cycle[j + 1];
    if (cycle.size() > 1) result.images_[cycle.back()] = cycle.front();
  }
  return result;
}

Perm Perm::operator*(const Perm& rhs) const {
  if (degree() != rhs.degree()) throw InputError("composing permutations of different degree");
  std::vector<Point> out(images_.size());
  for (Point x = 0; x < images_.size(); ++x) out[x] = rhs.images_[images_[x]];
  Perm p;
  p.images_ = std::move(out);
  return p;
}

Perm Perm::inverse() const {
  std::vector<Point> out(images_.size());
  for (Point x = 0; x < images_.size(); ++x) out[images_[x]] = x;
  Perm p;
  p.images_ = std::move(out);
  return p;
}

bool Perm::is_identity() const {
  for (Point x = 0; x < images_.size(); ++x)
    if (images_[x] != x) return false;
  return true;
}

std::uint64_t Perm::order() const {
  std::vector<bool> seen(images_.size(), false);
  std::uint64_t ord = 1;
  for (Point x = 0; x < images_.size(); ++x) {
    if (seen[x]) continue;
    std::uint64_t len = 0;
    Point y = x;
    while (!seen[y]) {
      seen[y] = true;
      y = images_[y];
      ++len;
    }
    ord = std::lcm(ord, len);
  }
  return ord;
}

std::string Perm::cycle_string() const {
  std::vector<bool> seen(images_.size(), false);
  std::ostringstream os;
  bool wrote = false;
  for (Point x = 0; x < images_.size(); ++x) {
    if (seen[x] || images_[x] == x) {
      seen[x] = true;
      continue;
    }
    os << '(';
    Point y = x;
    bool first = true;
    while (!seen[y]) {
      seen[y] = true;
      if (!first) os << ' ';
      os << (y + 1);
      first = false;
      y = images_[y];
    }
    os << ')';
    wrote = true;
  }
  if (!wrote) return "()";
  return os.str();
}

}  // namespace crownkit
