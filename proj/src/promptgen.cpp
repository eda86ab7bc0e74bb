// SPDX-License-Identifier: Apache-2.0

#include "virtfusion/promptgen.hpp"

#include <algorithm>
#include <cctype>
#include <regex>
#include <set>

#include <json.hpp>

#include "virtfusion/errors.hpp"
#include "virtfusion/rng.hpp"

namespace virtfusion::promptgen {

std::string_view to_string(PromptKind kind) {
  return kind == PromptKind::Structural ? "structural" : "texture";
}

PromptTemplate PromptTemplate::default_structural() {
  return {PromptKind::Structural,
          "List {n} common structural designs of a {class}, one per line, "
          "each a short visual description.",
          "You are an interior-design assistant. Answer with one description "
          "per line and no extra commentary."};
}

PromptTemplate PromptTemplate::default_texture() {
  return {PromptKind::Texture,
          "List {n} common textures, materials, and color schemes for a "
          "{class}, one per line.",
          "You are an interior-design assistant. Answer with one description "
          "per line and no extra commentary."};
}

namespace {

std::size_t count_occurrences(std::string_view haystack,
                              std::string_view needle) {
  std::size_t count = 0, pos = 0;
  while ((pos = haystack.find(needle, pos)) != std::string_view::npos) {
    ++count;
    pos += needle.size();
  }
  return count;
}

std::string replace_once(std::string text, std::string_view placeholder,
                         std::string_view value) {
  const std::size_t pos = text.find(placeholder);
  text.replace(pos, placeholder.size(), value);
  return text;
}

std::string fold_case(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

}  // namespace

std::string render_question(const PromptTemplate& tmpl,
                            std::string_view class_name, int n) {
  if (n < 1) throw InvalidArgumentError("render_question: n must be >= 1");
  if (class_name.empty()) {
    throw InvalidArgumentError("render_question: class name is empty");
  }
  if (count_occurrences(tmpl.question_template, "{class}") != 1 ||
      count_occurrences(tmpl.question_template, "{n}") != 1) {
    throw ConfigError(
        "prompt template must contain {class} and {n} exactly once");
  }
  std::string out = replace_once(tmpl.question_template, "{class}", class_name);
  out = replace_once(out, "{n}", std::to_string(n));
  return out;
}

std::vector<std::string> parse_response_lines(std::string_view text) {
  static const std::regex line_pattern(R"(^\s*(\d+[\.\)]\s*)?(.+)$)");

  std::vector<std::string> lines;
  std::set<std::string> seen;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string line(text.substr(pos, eol - pos));
    pos = eol + 1;

    std::smatch match;
    if (!std::regex_match(line, match, line_pattern)) continue;
    std::string item = match[2].str();
    while (!item.empty() && std::isspace(static_cast<unsigned char>(item.back()))) {
      item.pop_back();
    }
    if (item.empty()) continue;
    if (seen.insert(fold_case(item)).second) lines.push_back(std::move(item));
  }
  return lines;
}

PromptSet collect_prompts(ChatClient& client, const PromptTemplate& tmpl,
                          std::string_view class_name, int n,
                          const CollectOptions& options) {
  const std::string question = render_question(tmpl, class_name, n);

  PromptSet set;
  set.class_name = std::string(class_name);
  set.kind = tmpl.kind;
  set.source = std::string(client.source_kind());
  set.requested = n;

  std::set<std::string> seen;
  std::string last_transport_error;
  bool any_response = false;

  const int max_calls = 1 + std::max(0, options.max_retries);
  for (int call = 0; call < max_calls; ++call) {
    if (static_cast<int>(set.prompts.size()) >= n) break;
    ChatResponse response;
    try {
      response = client.complete({tmpl.system_preamble, question, n});
    } catch (const std::exception& e) {
      last_transport_error = e.what();
      continue;
    }
    any_response = true;
    for (auto& line : parse_response_lines(response.text)) {
      if (seen.insert(fold_case(line)).second) {
        set.prompts.push_back(std::move(line));
      }
    }
  }

  if (set.prompts.empty()) {
    if (!any_response) {
      throw UpstreamError("chat client failed after retries: " +
                          last_transport_error);
    }
    throw ValidationError("chat client returned no usable lines for class '" +
                          set.class_name + "'");
  }

  if (!options.quality_qualifiers.empty()) {
    std::string suffix;
    for (const auto& q : options.quality_qualifiers) suffix += ", " + q;
    for (auto& prompt : set.prompts) prompt += suffix;
  }
  return set;
}

// ---------------------------------------------------------------------------
// Clients
// ---------------------------------------------------------------------------

ChatResponse MockChatClient::complete(const ChatRequest& request) {
  // Deterministic pseudo-descriptions seeded by the question text.
  static const char* kShapes[] = {"slim",    "wide",  "rounded", "angular",
                                  "folding", "tall",  "compact", "curved",
                                  "layered", "plain", "ornate",  "minimal"};
  static const char* kStyles[] = {"modern",     "rustic",   "industrial",
                                  "classic",    "scandi",   "retro",
                                  "minimalist", "baroque",  "bauhaus",
                                  "art deco",   "coastal",  "farmhouse"};
  std::uint64_t h = 1469598103934665603ull;
  for (char c : request.user) h = (h ^ static_cast<unsigned char>(c)) * 1099511628211ull;

  std::string text;
  for (int i = 0; i < std::max(1, request.max_items); ++i) {
    const std::uint64_t k = mix64(h + static_cast<std::uint64_t>(i));
    text += std::to_string(i + 1) + ". a " +
            kShapes[k % std::size(kShapes)] + " " +
            kStyles[(k >> 8) % std::size(kStyles)] + " variant " +
            std::to_string(i + 1) + "\n";
  }
  return {text};
}

FixtureChatClient::FixtureChatClient(std::string_view json_bytes) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_bytes);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("chat fixture: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("chat fixture: root must be object");
  for (const auto& [kind, classes] : doc.items()) {
    if (!classes.is_object()) {
      throw ParseError("chat fixture: kind '" + kind + "' must map classes");
    }
    for (const auto& [cls, value] : classes.items()) {
      auto& slot = responses_[kind + "/" + cls];
      if (value.is_string()) {
        slot.push_back(value.get<std::string>());
      } else if (value.is_array()) {
        for (const auto& v : value) slot.push_back(v.get<std::string>());
      } else {
        throw ParseError("chat fixture: value for '" + cls +
                         "' must be string or array");
      }
    }
  }
}

void FixtureChatClient::bind(PromptKind kind, std::string class_name) {
  active_key_ = std::string(to_string(kind)) + "/" + class_name;
}

ChatResponse FixtureChatClient::complete(const ChatRequest&) {
  const auto it = responses_.find(active_key_);
  if (it == responses_.end() || it->second.empty()) {
    throw UpstreamError("chat fixture: no canned response for '" +
                        active_key_ + "'");
  }
  std::size_t& cur = cursor_[active_key_];
  const std::string& text = it->second[std::min(cur, it->second.size() - 1)];
  ++cur;
  return {text};
}

}  // namespace virtfusion::promptgen
