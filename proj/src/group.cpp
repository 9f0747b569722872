#include "group.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <map>
#include <numeric>
#include <sstream>

namespace gconv {

namespace {

std::vector<element_t> closure(const FiniteGroup& g, const std::vector<element_t>& gens) {
  std::vector<char> seen(g.order(), 0);
  std::vector<element_t> out{0};
  seen[0] = 1;
  // Right-multiplying every reached element by every generator reaches the
  // whole generated subgroup (finite, so inverses come for free).
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (element_t s : gens) {
      element_t h = g.mul(out[i], s);
      if (!seen[h]) {
        seen[h] = 1;
        out.push_back(h);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\n\r");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\n\r");
  return s.substr(b, e - b + 1);
}

GroupPtr make_cyclic(int n) {
  std::vector<element_t> table(static_cast<std::size_t>(n) * n);
  std::vector<std::string> labels;
  for (int a = 0; a < n; ++a) {
    labels.push_back(std::to_string(a));
    for (int b = 0; b < n; ++b) table[a * n + b] = static_cast<element_t>((a + b) % n);
  }
  return std::make_shared<FiniteGroup>("Z" + std::to_string(n), std::move(table), std::move(labels),
                                       GroupFamily{Family::Cyclic, n, {}});
}

// id = flip * n + k stands for r^k s^flip.
GroupPtr make_dihedral(int n) {
  const int order = 2 * n;
  std::vector<element_t> table(static_cast<std::size_t>(order) * order);
  std::vector<std::string> labels(order);
  for (int a = 0; a < order; ++a) {
    int ka = a % n, fa = a / n;
    labels[a] = (fa ? "s" : "r") + std::to_string(ka);
    for (int b = 0; b < order; ++b) {
      int kb = b % n, fb = b / n;
      int k = ((ka + (fa ? -kb : kb)) % n + n) % n;
      int f = (fa + fb) % 2;
      table[a * order + b] = static_cast<element_t>(f * n + k);
    }
  }
  return std::make_shared<FiniteGroup>("D" + std::to_string(n), std::move(table), std::move(labels),
                                       GroupFamily{Family::Dihedral, n, {}});
}

GroupPtr make_symmetric(int n) {
  auto perms = all_permutations(n);
  std::map<std::vector<int>, element_t> index;
  for (std::size_t i = 0; i < perms.size(); ++i) index[perms[i]] = static_cast<element_t>(i);
  const std::size_t order = perms.size();
  std::vector<element_t> table(order * order);
  std::vector<std::string> labels;
  std::vector<int> c(n);
  for (std::size_t a = 0; a < order; ++a) {
    labels.push_back(cycle_label(perms[a]));
    for (std::size_t b = 0; b < order; ++b) {
      // (ab)(x) = a(b(x))
      for (int x = 0; x < n; ++x) c[x] = perms[a][perms[b][x]];
      table[a * order + b] = index.at(c);
    }
  }
  return std::make_shared<FiniteGroup>("S" + std::to_string(n), std::move(table), std::move(labels),
                                       GroupFamily{Family::Symmetric, n, {}});
}

GroupPtr make_product(const std::vector<GroupPtr>& parts, const std::string& name) {
  std::size_t order = 1;
  for (const auto& p : parts) order *= p->order();
  const std::size_t k = parts.size();
  // Mixed radix, first factor most significant.
  auto split = [&](std::size_t id) {
    std::vector<element_t> digits(k);
    for (std::size_t i = k; i-- > 0;) {
      digits[i] = static_cast<element_t>(id % parts[i]->order());
      id /= parts[i]->order();
    }
    return digits;
  };
  auto join = [&](const std::vector<element_t>& digits) {
    std::size_t id = 0;
    for (std::size_t i = 0; i < k; ++i) id = id * parts[i]->order() + digits[i];
    return static_cast<element_t>(id);
  };
  std::vector<std::vector<element_t>> digits(order);
  for (std::size_t a = 0; a < order; ++a) digits[a] = split(a);
  std::vector<element_t> table(order * order);
  std::vector<element_t> d(k);
  for (std::size_t a = 0; a < order; ++a) {
    for (std::size_t b = 0; b < order; ++b) {
      for (std::size_t i = 0; i < k; ++i) d[i] = parts[i]->mul(digits[a][i], digits[b][i]);
      table[a * order + b] = join(d);
    }
  }
  std::vector<std::string> labels(order);
  for (std::size_t a = 0; a < order; ++a) {
    std::string s;
    for (std::size_t i = 0; i < k; ++i) {
      if (i) s += "|";
      s += parts[i]->label(digits[a][i]);
    }
    labels[a] = s;
  }
  GroupFamily fam{Family::Product, 0, {}};
  for (const auto& p : parts) fam.factors.push_back(p->family());
  return std::make_shared<FiniteGroup>(name, std::move(table), std::move(labels), std::move(fam));
}

}  // namespace

FiniteGroup::FiniteGroup(std::string name, std::vector<element_t> cayley, std::vector<std::string> labels,
                         GroupFamily family)
    : name_(std::move(name)),
      order_(labels.size()),
      cayley_(std::move(cayley)),
      labels_(std::move(labels)),
      family_(std::move(family)) {
  if (order_ == 0 || cayley_.size() != order_ * order_) throw Error("Cayley table size mismatch");
  inverse_.assign(order_, 0);
  for (element_t a = 0; a < order_; ++a) {
    bool found = false;
    for (element_t b = 0; b < order_; ++b) {
      if (mul(a, b) == 0) {
        inverse_[a] = b;
        found = true;
        break;
      }
    }
    if (!found) throw Error("element without inverse in Cayley table");
  }
  for (element_t a = 0; a < order_; ++a) by_label_.emplace(labels_[a], a);
  std::vector<char> reached(order_, 0);
  reached[0] = 1;
  for (element_t g = 1; g < order_; ++g) {
    if (reached[g]) continue;
    generators_.push_back(g);
    for (element_t h : closure(*this, generators_)) reached[h] = 1;
  }
}

element_t FiniteGroup::parse_element(const std::string& text) const {
  std::string t = trim(text);
  auto it = by_label_.find(t);
  if (it != by_label_.end()) return it->second;
  if (!t.empty() && t[0] == '#') {
    char* end = nullptr;
    unsigned long v = std::strtoul(t.c_str() + 1, &end, 10);
    if (end && *end == '\0' && t.size() > 1 && v < order_) return static_cast<element_t>(v);
  }
  throw ParseError("unknown element '" + t + "' in group " + name_);
}

bool FiniteGroup::check_identity() const {
  for (element_t g = 0; g < order_; ++g)
    if (mul(0, g) != g || mul(g, 0) != g) return false;
  return true;
}

bool FiniteGroup::check_inverse() const {
  for (element_t g = 0; g < order_; ++g)
    if (mul(g, inverse_[g]) != 0 || mul(inverse_[g], g) != 0) return false;
  return true;
}

bool FiniteGroup::check_associativity() const {
  for (element_t a = 0; a < order_; ++a)
    for (element_t b = 0; b < order_; ++b) {
      element_t ab = mul(a, b);
      for (element_t c = 0; c < order_; ++c)
        if (mul(ab, c) != mul(a, mul(b, c))) return false;
    }
  return true;
}

bool FiniteGroup::check_latin_square() const {
  std::vector<int> row(order_), col(order_);
  for (element_t a = 0; a < order_; ++a) {
    std::fill(row.begin(), row.end(), 0);
    std::fill(col.begin(), col.end(), 0);
    for (element_t b = 0; b < order_; ++b) {
      if (row[mul(a, b)]++ || col[mul(b, a)]++) return false;
    }
  }
  return true;
}

std::size_t max_group_order() {
  if (const char* env = std::getenv("GCONV_MAX_ORDER")) {
    char* end = nullptr;
    unsigned long v = std::strtoul(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
  }
  return 720;
}

std::vector<std::vector<int>> all_permutations(int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

std::string cycle_label(const std::vector<int>& perm) {
  const int n = static_cast<int>(perm.size());
  std::vector<char> seen(n, 0);
  std::string s;
  for (int i = 0; i < n; ++i) {
    if (seen[i] || perm[i] == i) continue;
    s += "(";
    for (int j = i; !seen[j]; j = perm[j]) {
      seen[j] = 1;
      s += std::to_string(j + 1);
    }
    s += ")";
  }
  return s.empty() ? "e" : s;
}

GroupPtr build_group(const std::string& spec) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : spec) {
    if (ch == 'x') {
      parts.push_back(trim(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  parts.push_back(trim(cur));

  const std::size_t limit = max_group_order();
  std::vector<GroupPtr> groups;
  double order = 1;
  for (const auto& p : parts) {
    if (p.size() < 2 || (p[0] != 'Z' && p[0] != 'D' && p[0] != 'S'))
      throw ParseError("malformed group spec '" + spec + "'");
    for (std::size_t i = 1; i < p.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(p[i]))) throw ParseError("malformed group spec '" + spec + "'");
    if (p.size() > 5) throw ResourceError("group '" + p + "' too large");
    int n = std::stoi(p.substr(1));
    if (n < 1) throw ParseError("group parameter must be positive in '" + spec + "'");
    double factor = 0;
    switch (p[0]) {
      case 'Z': factor = n; break;
      case 'D': factor = 2.0 * n; break;
      case 'S': {
        if (n > 6) throw ResourceError("symmetric groups are limited to S6");
        factor = 1;
        for (int i = 2; i <= n; ++i) factor *= i;
        break;
      }
    }
    order *= factor;
    if (order > static_cast<double>(limit))
      throw ResourceError("group '" + spec + "' exceeds the order limit " + std::to_string(limit));
    switch (p[0]) {
      case 'Z': groups.push_back(make_cyclic(n)); break;
      case 'D': groups.push_back(make_dihedral(n)); break;
      default: groups.push_back(make_symmetric(n)); break;
    }
  }
  if (groups.size() == 1) return groups.front();
  std::string name;
  for (std::size_t i = 0; i < groups.size(); ++i) name += (i ? "x" : "") + groups[i]->name();
  return make_product(groups, name);
}

Subgroup::Subgroup(GroupPtr parent, std::vector<element_t> members, std::string name)
    : parent_(std::move(parent)), members_(std::move(members)), name_(std::move(name)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  in_.assign(parent_->order(), 0);
  for (element_t m : members_) {
    if (m >= parent_->order()) throw Error("subgroup member out of range");
    in_[m] = 1;
  }
  if (members_.empty() || members_[0] != 0) throw Error("subgroup must contain the identity");
  for (element_t a : members_) {
    if (!in_[parent_->inv(a)]) throw Error("subgroup not closed under inverses");
    for (element_t b : members_)
      if (!in_[parent_->mul(a, b)]) throw Error("subgroup not closed under multiplication");
  }
  if (parent_->order() % members_.size() != 0) throw Error("subgroup order does not divide group order");

  const std::size_t k = members_.size();
  std::vector<element_t> local(parent_->order(), 0);
  for (std::size_t i = 0; i < k; ++i) local[members_[i]] = static_cast<element_t>(i);
  std::vector<element_t> table(k * k);
  std::vector<std::string> labels(k);
  for (std::size_t i = 0; i < k; ++i) {
    labels[i] = parent_->label(members_[i]);
    for (std::size_t j = 0; j < k; ++j) table[i * k + j] = local[parent_->mul(members_[i], members_[j])];
  }
  standalone_ = std::make_shared<FiniteGroup>(name_, std::move(table), std::move(labels), GroupFamily{});
}

GroupPtr Subgroup::as_group() const { return standalone_; }

SubgroupPtr subgroup_from_generators(const GroupPtr& group, const std::vector<element_t>& gens) {
  for (element_t g : gens)
    if (g >= group->order()) throw Error("generator id out of range");
  std::string name = "<";
  for (std::size_t i = 0; i < gens.size(); ++i) name += (i ? "," : "") + group->label(gens[i]);
  name += ">";
  return std::make_shared<Subgroup>(group, closure(*group, gens), name);
}

SubgroupPtr subgroup_from_labels(const GroupPtr& group, const std::vector<std::string>& gens) {
  std::vector<element_t> ids;
  for (const auto& s : gens) ids.push_back(group->parse_element(s));
  return subgroup_from_generators(group, ids);
}

SubgroupPtr subgroup_from_labels(const GroupPtr& group, const std::string& gens) {
  std::vector<std::string> tokens;
  std::string cur;
  for (char ch : gens) {
    if (ch == ',' || ch == ';' || std::isspace(static_cast<unsigned char>(ch))) {
      if (!cur.empty()) tokens.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!cur.empty()) tokens.push_back(cur);
  return subgroup_from_labels(group, tokens);
}

SubgroupPtr trivial_subgroup(const GroupPtr& group) { return subgroup_from_generators(group, {}); }

}  // namespace gconv
