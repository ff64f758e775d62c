// Copyright 2026 The Decapode Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "decapode/decapode.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <tuple>

#include "decapode/error.hpp"

namespace decapode {

std::optional<VarId> Decapode::find_var(std::string_view name) const {
  auto it = by_name_.find(std::string(name));
  if (it == by_name_.end()) it = by_name_.find(decompose_dot_above(name));
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

VarId Decapode::var_id(std::string_view name) const {
  if (auto id = find_var(name)) return *id;
  throw Error(ErrorCode::InvalidArgument, "unknown variable '" + std::string(name) + "'");
}

VarId Decapode::add_var(std::string name, VarType type, bool parameter) {
  if (name.empty()) throw Error(ErrorCode::InvalidArgument, "variable name must not be empty");
  if (by_name_.contains(name)) throw Error(ErrorCode::InvalidArgument, "duplicate variable '" + name + "'");
  const VarId id = vars_.size();
  by_name_.emplace(name, id);
  vars_.push_back({std::move(name), type, parameter});
  return id;
}

VarId Decapode::add_anonymous_var(VarType type) {
  std::string name;
  do {
    name = std::string(kAnonymousPrefix) + std::to_string(next_anonymous_++);
  } while (by_name_.contains(name));
  return add_var(std::move(name), type);
}

void Decapode::set_type(VarId id, VarType type) {
  check_var(id, "set_type");
  vars_[id].type = type;
}

void Decapode::set_parameter(VarId id, bool parameter) {
  check_var(id, "set_parameter");
  vars_[id].parameter = parameter;
}

void Decapode::rename_var(VarId id, std::string name) {
  check_var(id, "rename_var");
  if (vars_[id].name == name) return;
  if (name.empty() || by_name_.contains(name)) {
    throw Error(ErrorCode::InvalidArgument, "cannot rename to '" + name + "'");
  }
  by_name_.erase(vars_[id].name);
  by_name_.emplace(name, id);
  vars_[id].name = std::move(name);
}

std::size_t Decapode::add_tvar(VarId incl) {
  check_var(incl, "TVar.incl");
  tvars_.push_back({incl});
  return tvars_.size() - 1;
}

std::size_t Decapode::add_op1(VarId src, VarId tgt, std::string op) {
  check_var(src, "Op1.src");
  check_var(tgt, "Op1.tgt");
  op1s_.push_back({src, tgt, std::move(op)});
  return op1s_.size() - 1;
}

std::size_t Decapode::add_op2(VarId proj1, VarId proj2, VarId res, std::string op) {
  check_var(proj1, "Op2.proj1");
  check_var(proj2, "Op2.proj2");
  check_var(res, "Op2.res");
  op2s_.push_back({proj1, proj2, res, std::move(op)});
  return op2s_.size() - 1;
}

std::size_t Decapode::add_sum(VarId sum, const std::vector<VarId>& args) {
  check_var(sum, "Σ.sum");
  for (VarId a : args) check_var(a, "Summand.summand");
  const std::size_t row = sigmas_.size();
  sigmas_.push_back({sum});
  for (VarId a : args) summands_.push_back({a, row});
  return row;
}

void Decapode::rename_op1(std::size_t row, std::string op) { op1s_.at(row).op1 = std::move(op); }
void Decapode::rename_op2(std::size_t row, std::string op) { op2s_.at(row).op2 = std::move(op); }

std::vector<VarId> Decapode::summands_of(std::size_t sigma) const {
  std::vector<VarId> out;
  for (const Summand& s : summands_) {
    if (s.summation == sigma) out.push_back(s.summand);
  }
  return out;
}

bool Decapode::is_anonymous(VarId id) const { return vars_.at(id).name.starts_with(kAnonymousPrefix); }

bool Decapode::is_tangent(VarId id) const {
  return std::any_of(tvars_.begin(), tvars_.end(), [id](const TVar& t) { return t.incl == id; });
}

std::vector<VarId> Decapode::tangents_of(VarId id) const {
  std::vector<VarId> out;
  for (const Op1& op : op1s_) {
    if (op.op1 == kTimeDerivative && op.src == id) out.push_back(op.tgt);
  }
  return out;
}

void Decapode::check_var(VarId id, const char* role) const {
  if (id >= vars_.size()) {
    throw Error(ErrorCode::MalformedInput,
                std::string(role) + " references var " + std::to_string(id) + " of " + std::to_string(vars_.size()));
  }
}

void Decapode::check_integrity() const {
  std::set<std::string> names;
  for (const Var& v : vars_) {
    if (!names.insert(v.name).second) throw Error(ErrorCode::MalformedInput, "duplicate variable " + v.name);
  }
  for (const TVar& t : tvars_) check_var(t.incl, "TVar.incl");
  for (const Op1& o : op1s_) {
    check_var(o.src, "Op1.src");
    check_var(o.tgt, "Op1.tgt");
  }
  for (const Op2& o : op2s_) {
    check_var(o.proj1, "Op2.proj1");
    check_var(o.proj2, "Op2.proj2");
    check_var(o.res, "Op2.res");
  }
  for (const Sigma& s : sigmas_) check_var(s.sum, "Σ.sum");
  for (const Summand& s : summands_) {
    check_var(s.summand, "Summand.summand");
    if (s.summation >= sigmas_.size()) throw Error(ErrorCode::MalformedInput, "dangling Summand.summation");
  }
}

std::string tangent_name(std::string_view state) { return std::string(state) + "̇"; }

std::string decompose_dot_above(std::string_view name) {
  // Precomposed letters whose canonical decomposition is <ASCII letter, U+0307>.
  static constexpr std::string_view kComposed = "ĊċĖėĠġİŻżȦȧȮȯḂḃḊḋḞḟḢḣṀṁṄṅṖṗṘṙṠṡṪṫẆẇẊẋẎẏ";
  static constexpr std::string_view kBase = "CcEeGgIZzAaOoBbDdFfHhMmNnPpRrSsTtWwXxYy";
  std::string out;
  out.reserve(name.size() + 4);
  std::size_t i = 0;
  while (i < name.size()) {
    const unsigned char c = static_cast<unsigned char>(name[i]);
    const std::size_t len = c < 0x80 ? 1 : c < 0xE0 ? 2 : c < 0xF0 ? 3 : 4;
    const std::string_view ch = name.substr(i, len);
    bool replaced = false;
    if (len > 1) {
      std::size_t j = 0, k = 0;
      while (j < kComposed.size()) {
        const unsigned char h = static_cast<unsigned char>(kComposed[j]);
        const std::size_t n = h < 0xE0 ? 2 : 3;
        if (kComposed.substr(j, n) == ch) {
          out += kBase[k];
          out += "̇";
          replaced = true;
          break;
        }
        j += n;
        ++k;
      }
    }
    if (!replaced) out += ch;
    i += len;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Isomorphism

namespace {

using Color = std::size_t;

// Compacts arbitrary keys into dense color ids, in key order.
template <typename Key>
std::vector<Color> compact(const std::vector<Key>& keys) {
  std::map<Key, Color> ids;
  for (const Key& k : keys) ids.emplace(k, 0);
  Color next = 0;
  for (auto& [k, id] : ids) id = next++;
  std::vector<Color> out;
  out.reserve(keys.size());
  for (const Key& k : keys) out.push_back(ids.at(k));
  return out;
}

// Row tuple: (table, op name, ordered var list). Σ summands are sorted since
// their order carries no meaning.
using Row = std::tuple<int, std::string, std::vector<VarId>>;

std::vector<Row> rows_of(const Decapode& d) {
  std::vector<Row> rows;
  for (const TVar& t : d.tvars()) rows.emplace_back(0, "", std::vector<VarId>{t.incl});
  for (const Op1& o : d.op1s()) rows.emplace_back(1, o.op1, std::vector<VarId>{o.src, o.tgt});
  for (const Op2& o : d.op2s()) rows.emplace_back(2, o.op2, std::vector<VarId>{o.proj1, o.proj2, o.res});
  for (std::size_t s = 0; s < d.sigmas().size(); ++s) {
    std::vector<VarId> vs = d.summands_of(s);
    vs.insert(vs.begin(), d.sigmas()[s].sum);
    rows.emplace_back(3, "", std::move(vs));
  }
  return rows;
}

// Σ rows keep the sum first and sort the summands after mapping.
std::vector<Row> mapped_rows(const std::vector<Row>& rows, const std::vector<VarId>& map) {
  std::vector<Row> out;
  out.reserve(rows.size());
  for (const auto& [table, name, vs] : rows) {
    std::vector<VarId> m;
    m.reserve(vs.size());
    for (VarId v : vs) m.push_back(map[v]);
    if (table == 3) std::sort(m.begin() + 1, m.end());
    out.emplace_back(table, name, std::move(m));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Color> refine(const Decapode& d, const std::vector<Row>& rows, bool match_names,
                          std::vector<std::string>& palette_keys) {
  using Key = std::tuple<std::string, bool, std::string>;
  std::vector<Key> initial;
  for (VarId v = 0; v < d.vars().size(); ++v) {
    const Var& var = d.var(v);
    initial.emplace_back(to_string(var.type), var.parameter, match_names && !d.is_anonymous(v) ? var.name : "");
  }
  // The palette must be shared by both sides, so colors are strings built
  // from the keys instead of per-graph dense ids.
  std::vector<std::string> color(d.vars().size());
  for (VarId v = 0; v < color.size(); ++v) {
    const auto& [t, p, n] = initial[v];
    color[v] = t + (p ? "|p|" : "|v|") + n;
  }
  for (std::size_t round = 0; round < 3; ++round) {
    std::vector<std::vector<std::string>> incident(color.size());
    for (const auto& [table, name, vs] : rows) {
      for (std::size_t pos = 0; pos < vs.size(); ++pos) {
        std::string sig = std::to_string(table) + ":" + name + ":" +
                          std::to_string(table == 3 ? std::min<std::size_t>(pos, 1) : pos) + "[";
        std::vector<std::string> others;
        for (std::size_t q = 0; q < vs.size(); ++q) {
          if (q == pos) continue;
          others.push_back(std::to_string(table == 3 ? std::min<std::size_t>(q, 1) : q) + "=" + color[vs[q]]);
        }
        std::sort(others.begin(), others.end());
        for (const auto& o : others) sig += o + ",";
        incident[vs[pos]].push_back(sig + "]");
      }
    }
    std::vector<std::string> next(color.size());
    for (VarId v = 0; v < color.size(); ++v) {
      std::sort(incident[v].begin(), incident[v].end());
      std::string s = color[v] + "{";
      for (const auto& i : incident[v]) s += i + ";";
      next[v] = std::to_string(std::hash<std::string>{}(s + "}"));
    }
    color = std::move(next);
  }
  palette_keys = color;
  return compact(color);
}

}  // namespace

bool isomorphic(const Decapode& a, const Decapode& b, bool match_names) {
  if (a.vars().size() != b.vars().size() || a.tvars().size() != b.tvars().size() ||
      a.op1s().size() != b.op1s().size() || a.op2s().size() != b.op2s().size() ||
      a.sigmas().size() != b.sigmas().size() || a.summands().size() != b.summands().size()) {
    return false;
  }
  const auto rows_a = rows_of(a);
  const auto rows_b = rows_of(b);
  std::vector<std::string> keys_a, keys_b;
  refine(a, rows_a, match_names, keys_a);
  refine(b, rows_b, match_names, keys_b);

  {
    auto sa = keys_a, sb = keys_b;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return false;
  }

  std::vector<Row> identity_b;
  {
    std::vector<VarId> id(b.vars().size());
    for (VarId v = 0; v < id.size(); ++v) id[v] = v;
    identity_b = mapped_rows(rows_b, id);
  }

  const std::size_t n = a.vars().size();
  std::vector<VarId> map(n, 0);
  std::vector<bool> used(n, false);
  std::size_t budget = 200000;

  std::function<bool(std::size_t)> search = [&](std::size_t v) -> bool {
    if (budget-- == 0) return false;
    if (v == n) return mapped_rows(rows_a, map) == identity_b;
    for (VarId w = 0; w < n; ++w) {
      if (used[w] || keys_b[w] != keys_a[v]) continue;
      used[w] = true;
      map[v] = w;
      if (search(v + 1)) return true;
      used[w] = false;
    }
    return false;
  };
  return search(0);
}

}  // namespace decapode
