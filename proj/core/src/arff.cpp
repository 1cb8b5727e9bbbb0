// Copyright 2026 The sonsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cctype>
#include <set>

#include <fmt/format.h>

#include "sonsim/dtree.hpp"
#include "sonsim/error.hpp"

namespace sonsim {

namespace {

std::string_view trim(std::string_view s) {
  auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool starts_with_keyword(std::string_view line, std::string_view keyword) {
  if (line.size() < keyword.size()) return false;
  for (std::size_t i = 0; i < keyword.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(line[i])) != keyword[i]) return false;
  }
  return line.size() == keyword.size() ||
         std::isspace(static_cast<unsigned char>(line[keyword.size()]));
}

std::vector<std::string_view> split_commas(std::string_view s) {
  std::vector<std::string_view> out;
  if (trim(s).empty()) return out;
  std::size_t start = 0;
  for (;;) {
    auto pos = s.find(',', start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

template <class Set, class Render>
std::string nominal(const Set& values, Render&& render) {
  std::string out = "{";
  bool first = true;
  for (const auto& v : values) {
    if (!first) out += ',';
    first = false;
    out += render(v);
  }
  return out + "}";
}

struct AttributeDecl {
  std::string name;
  std::set<std::string, std::less<>> values;
};

}  // namespace

std::string arff_export(std::span<const Instance> instances,
                        std::string_view relation, std::size_t arity) {
  if (relation.empty() ||
      std::any_of(relation.begin(), relation.end(),
                  [](char c) { return std::isspace(static_cast<unsigned char>(c)); })) {
    throw Error("ARFF relation name must be a non-empty word");
  }
  if (!instances.empty()) arity = instances.front().attributes.size();
  std::vector<std::set<ExpertiseElement>> values(arity);
  std::set<SuperPeerId> classes;
  for (const auto& inst : instances) {
    if (inst.attributes.size() != arity) {
      throw Error("instances disagree on the number of attributes");
    }
    for (std::size_t a = 0; a < arity; ++a) values[a].insert(inst.attributes[a]);
    classes.insert(inst.label);
  }

  auto element = [](const ExpertiseElement& e) { return to_string(e); };
  auto label = [](SuperPeerId sp) { return to_string(sp); };

  std::string out = fmt::format("@relation {}\n\n", relation);
  for (std::size_t a = 0; a < arity; ++a) {
    out += fmt::format("@attribute {} {}\n", attribute_name(a), nominal(values[a], element));
  }
  out += fmt::format("@attribute class {}\n\n@data\n", nominal(classes, label));
  for (const auto& inst : instances) {
    for (const auto& v : inst.attributes) {
      out += to_string(v);
      out += ',';
    }
    out += to_string(inst.label);
    out += '\n';
  }
  return out;
}

ArffDataset arff_import(std::string_view text) {
  ArffDataset data;
  std::vector<AttributeDecl> decls;
  bool have_relation = false;
  bool in_data = false;
  std::size_t line_no = 0;

  while (!text.empty()) {
    ++line_no;
    auto nl = text.find('\n');
    auto line = trim(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (line.empty() || line.front() == '%') continue;

    if (!in_data) {
      if (starts_with_keyword(line, "@relation")) {
        if (have_relation) throw ParseError("duplicate @relation", line_no);
        data.relation = std::string(trim(line.substr(9)));
        if (data.relation.empty()) throw ParseError("missing relation name", line_no);
        have_relation = true;
      } else if (starts_with_keyword(line, "@attribute")) {
        if (!have_relation) throw ParseError("@attribute before @relation", line_no);
        auto rest = trim(line.substr(10));
        auto space = rest.find_first_of(" \t");
        if (space == std::string_view::npos) {
          throw ParseError("expected '@attribute NAME {values}'", line_no);
        }
        AttributeDecl decl{std::string(rest.substr(0, space)), {}};
        auto spec = trim(rest.substr(space));
        if (spec.size() < 2 || spec.front() != '{' || spec.back() != '}') {
          throw ParseError("only nominal attributes are supported", line_no);
        }
        for (auto v : split_commas(spec.substr(1, spec.size() - 2))) {
          if (v.empty()) throw ParseError("empty nominal value", line_no);
          decl.values.emplace(v);
        }
        decls.push_back(std::move(decl));
      } else if (starts_with_keyword(line, "@data")) {
        if (decls.empty() || decls.back().name != "class") {
          throw ParseError("the last attribute must be 'class'", line_no);
        }
        for (std::size_t a = 0; a + 1 < decls.size(); ++a) {
          if (decls[a].name != attribute_name(a)) {
            throw ParseError("expected attribute " + attribute_name(a) + ", found " +
                                 decls[a].name,
                             line_no);
          }
        }
        data.arity = decls.size() - 1;
        in_data = true;
      } else {
        throw ParseError("unexpected line '" + std::string(line) + "'", line_no);
      }
      continue;
    }

    auto fields = split_commas(line);
    if (fields.size() != decls.size()) {
      throw ParseError(fmt::format("expected {} values, found {}", decls.size(), fields.size()),
                       line_no);
    }
    for (std::size_t a = 0; a < fields.size(); ++a) {
      if (!decls[a].values.count(fields[a])) {
        throw ParseError(fmt::format("value '{}' not declared for {}", fields[a],
                                     decls[a].name),
                         line_no);
      }
    }
    try {
      Instance inst;
      for (std::size_t a = 0; a < data.arity; ++a) {
        inst.attributes.push_back(parse_element(fields[a]));
      }
      inst.label = parse_super_peer_id(fields.back());
      data.instances.push_back(std::move(inst));
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(e.what(), line_no);
    }
  }
  if (!in_data) throw ParseError("missing @data section", line_no);
  return data;
}

}  // namespace sonsim
