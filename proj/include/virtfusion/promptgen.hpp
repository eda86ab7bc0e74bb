// SPDX-License-Identifier: Apache-2.0
//
// Text-prompt production: question templates with {class}/{n} placeholders,
// a chat-model client contract, and response parsing into deduplicated
// prompt sets with configurable quality qualifiers.

#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace virtfusion::promptgen {

enum class PromptKind { Structural, Texture };

std::string_view to_string(PromptKind kind);

struct PromptTemplate {
  PromptKind kind = PromptKind::Structural;
  /// Must contain {class} and {n} exactly once each.
  std::string question_template;
  std::string system_preamble;

  static PromptTemplate default_structural();
  static PromptTemplate default_texture();
};

/// Substitutes both placeholders; a malformed template raises ConfigError.
std::string render_question(const PromptTemplate& tmpl,
                            std::string_view class_name, int n);

struct ChatRequest {
  std::string system;
  std::string user;
  int max_items = 0;
};

struct ChatResponse {
  std::string text;
};

/// Chat-model transport contract. Implementations must be callable from
/// multiple workers concurrently and enforce their own timeouts.
class ChatClient {
public:
  virtual ~ChatClient() = default;
  virtual ChatResponse complete(const ChatRequest& request) = 0;
  /// "chat-client" for live transports, "fixture" for canned ones.
  virtual std::string_view source_kind() const = 0;
};

/// Deterministic in-process client; produces max_items distinct one-line
/// descriptions derived from the question text.
class MockChatClient final : public ChatClient {
public:
  ChatResponse complete(const ChatRequest& request) override;
  std::string_view source_kind() const override { return "fixture"; }
};

/// Serves canned responses from JSON: {"structural":{"chair":["text", ...]}}.
/// Values may be a single string or an array consumed call by call (the last
/// element repeats once exhausted).
class FixtureChatClient final : public ChatClient {
public:
  explicit FixtureChatClient(std::string_view json_bytes);
  ChatResponse complete(const ChatRequest& request) override;
  std::string_view source_kind() const override { return "fixture"; }

  /// Routes requests by (kind, class); collect_prompts embeds both in the
  /// request so the fixture can key on them.
  void bind(PromptKind kind, std::string class_name);

private:
  std::map<std::string, std::vector<std::string>> responses_;
  std::map<std::string, std::size_t> cursor_;
  std::string active_key_;
};

struct PromptSet {
  std::string class_name;
  PromptKind kind = PromptKind::Structural;
  std::vector<std::string> prompts;
  std::string source;  // "chat-client" | "fixture"
  int requested = 0;   // n the caller asked for; prompts.size() is achieved
};

struct CollectOptions {
  /// Appended to every prompt, comma-separated, to steer generation hygiene.
  std::vector<std::string> quality_qualifiers{"centered", "clean background",
                                              "no occlusion"};
  /// Extra times the question is re-issued while fewer than n prompts exist.
  int max_retries = 3;
};

/// Asks the client for n descriptions of class_name, splits the response
/// into lines (numbered lists accepted), trims, deduplicates
/// case-insensitively, re-issues while short, then suffixes the qualifiers.
PromptSet collect_prompts(ChatClient& client, const PromptTemplate& tmpl,
                          std::string_view class_name, int n,
                          const CollectOptions& options = {});

/// Response-splitting helper, exposed for reuse: strips numbering, trims,
/// drops blanks, deduplicates case-insensitively (first occurrence wins).
std::vector<std::string> parse_response_lines(std::string_view text);

}  // namespace virtfusion::promptgen
