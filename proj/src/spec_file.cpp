#include "proportia/spec_file.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "proportia/error.hpp"

namespace proportia {

namespace {

std::string trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

struct Section {
  enum class Kind { language, algebra } kind;
  std::string name;
  std::size_t line = 0;
  // key -> (value, line)
  std::map<std::string, std::pair<std::string, std::size_t>> keys;
};

Language build_language(const Section& sec) {
  std::vector<FunctionSymbol> fns;
  std::vector<std::string> consts;
  for (const auto& [key, entry] : sec.keys) {
    const auto& [value, line] = entry;
    if (key == "fn") {
      for (const auto& item : split_list(value)) {
        auto slash = item.find('/');
        if (slash == std::string::npos) throw SpecError(line, "expected name/rank, got '" + item + "'");
        try {
          fns.push_back({trim(item.substr(0, slash)),
                         static_cast<std::uint32_t>(std::stoul(item.substr(slash + 1)))});
        } catch (const std::logic_error&) {
          throw SpecError(line, "bad rank in '" + item + "'");
        }
      }
    } else if (key == "const") {
      for (const auto& item : split_list(value)) consts.push_back(item);
    } else {
      throw SpecError(line, "unknown key '" + key + "' in [language " + sec.name + "]");
    }
  }
  try {
    return Language(fns, consts);
  } catch (const Error& e) {
    throw SpecError(sec.line, e.what());
  }
}

std::vector<std::string> allowed_keys(const std::string& kind) {
  for (const auto& info : builtin_catalog()) {
    if (info.kind != kind) continue;
    std::vector<std::string> out;
    std::stringstream in(info.keys);
    std::string key;
    while (in >> key) out.push_back(key);
    return out;
  }
  return {};
}

AlgebraPtr build_algebra(const Section& sec, const std::map<std::string, Language>& languages) {
  auto kind_it = sec.keys.find("kind");
  if (kind_it == sec.keys.end()) throw SpecError(sec.line, "algebra '" + sec.name + "' has no kind=");
  const std::string kind = kind_it->second.first;
  auto allowed = allowed_keys(kind);
  if (allowed.empty()) throw SpecError(kind_it->second.second, "unknown kind '" + kind + "'");
  if (kind == "bare_set") allowed.push_back("universe");
  if (kind == "table") allowed.push_back("elems");

  const Language* declared = nullptr;
  BuiltinParams params;
  for (const auto& [key, entry] : sec.keys) {
    const auto& [value, line] = entry;
    if (key == "kind") continue;
    if (key == "language") {
      auto it = languages.find(value);
      if (it == languages.end()) throw SpecError(line, "unknown language '" + value + "'");
      declared = &it->second;
      continue;
    }
    bool ok = std::find(allowed.begin(), allowed.end(), key) != allowed.end() ||
              (kind == "table" && key.rfind("table.", 0) == 0);
    if (!ok) throw SpecError(line, "unknown key '" + key + "' for kind " + kind);
    params[key] = value;
  }
  if (declared && kind == "table" && !params.count("ops")) {
    std::string ops;
    for (const auto& fn : declared->functions()) {
      if (!ops.empty()) ops += ',';
      ops += fn.name + "/" + std::to_string(fn.rank);
    }
    params["ops"] = ops;
  }
  std::shared_ptr<const PartialAlgebra> alg;
  try {
    alg = std::make_shared<const PartialAlgebra>(builtin(kind, params, sec.name));
  } catch (const Error& e) {
    throw SpecError(sec.line, "algebra '" + sec.name + "': " + e.what());
  }
  if (declared && !(alg->language() == *declared))
    throw SpecError(sec.line, "algebra '" + sec.name + "' has language [" +
                                  alg->language().describe() + "], declared [" +
                                  declared->describe() + "]");
  return alg;
}

}  // namespace

AlgebraPtr Registry::get(const std::string& name) const {
  auto it = algebras.find(name);
  if (it == algebras.end()) throw MissingAlgebra("no algebra named '" + name + "' is loaded");
  return it->second;
}

Registry parse_spec(std::string_view text) {
  std::vector<Section> sections;
  std::stringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::string line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw SpecError(line_no, "unterminated section header");
      std::stringstream header(line.substr(1, line.size() - 2));
      std::string word, name, extra;
      header >> word >> name >> extra;
      if (!extra.empty()) throw SpecError(line_no, "unexpected text in section header");
      if (word != "language" && word != "algebra")
        throw SpecError(line_no, "unknown section '" + word + "'");
      if (!is_identifier(name)) throw SpecError(line_no, "section needs an identifier name");
      sections.push_back({word == "language" ? Section::Kind::language : Section::Kind::algebra,
                          name, line_no, {}});
      continue;
    }
    if (sections.empty()) throw SpecError(line_no, "text outside of a section");
    std::string key, value;
    if (line.rfind("table ", 0) == 0) {
      auto colon = line.find(':');
      if (colon == std::string::npos) throw SpecError(line_no, "expected 'table <sym>: rows'");
      key = "table." + trim(line.substr(6, colon - 6));
      value = trim(line.substr(colon + 1));
    } else {
      auto eq = line.find('=');
      if (eq == std::string::npos) throw SpecError(line_no, "expected key = value");
      key = trim(line.substr(0, eq));
      value = trim(line.substr(eq + 1));
    }
    auto& keys = sections.back().keys;
    if (auto it = keys.find(key); it != keys.end()) {
      if (key.rfind("table.", 0) != 0 && key != "fn" && key != "const")
        throw SpecError(line_no, "key '" + key + "' given twice");
      it->second.first += (key.rfind("table.", 0) == 0 ? ";" : ",") + value;
    } else {
      keys.emplace(key, std::make_pair(value, line_no));
    }
  }

  Registry reg;
  for (const auto& sec : sections) {
    if (sec.kind == Section::Kind::language) {
      if (!reg.languages.emplace(sec.name, build_language(sec)).second)
        throw SpecError(sec.line, "language '" + sec.name + "' declared twice");
    } else {
      if (reg.algebras.count(sec.name)) throw SpecError(sec.line, "algebra '" + sec.name + "' declared twice");
      reg.algebras.emplace(sec.name, build_algebra(sec, reg.languages));
      reg.order.push_back(sec.name);
    }
  }
  return reg;
}

Registry load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError(0, "cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_spec(buf.str());
}

}  // namespace proportia
