// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "virtfusion/errors.hpp"
#include "virtfusion/promptgen.hpp"

using namespace virtfusion;
using namespace virtfusion::promptgen;

namespace {

/// Scripted client: returns canned texts in order, throwing where marked.
class ScriptedClient final : public ChatClient {
public:
  explicit ScriptedClient(std::vector<std::string> responses)
      : responses_(std::move(responses)) {}

  ChatResponse complete(const ChatRequest&) override {
    ++calls_;
    if (cursor_ >= responses_.size()) return {""};
    const std::string text = responses_[cursor_++];
    if (text == "<throw>") throw std::runtime_error("connection reset");
    return {text};
  }
  std::string_view source_kind() const override { return "chat-client"; }
  int calls() const { return calls_; }

private:
  std::vector<std::string> responses_;
  std::size_t cursor_ = 0;
  int calls_ = 0;
};

}  // namespace

TEST_CASE("render_question substitutes both placeholders") {
  const auto tmpl = PromptTemplate::default_structural();
  const auto q = render_question(tmpl, "chair", 10);
  CHECK(q.find("chair") != std::string::npos);
  CHECK(q.find("10") != std::string::npos);
  CHECK(q.find("{class}") == std::string::npos);
  CHECK(q.find("{n}") == std::string::npos);
}

TEST_CASE("render_question keeps multi-word class names verbatim") {
  const auto tmpl = PromptTemplate::default_texture();
  const auto q = render_question(tmpl, "shower curtain", 4);
  CHECK(q.find("shower curtain") != std::string::npos);
}

TEST_CASE("render_question rejects malformed templates and bad args") {
  PromptTemplate missing_n{PromptKind::Structural, "describe a {class}", ""};
  CHECK_THROWS_AS(render_question(missing_n, "chair", 3), ConfigError);

  PromptTemplate twice{PromptKind::Structural, "{n} and {n} of {class}", ""};
  CHECK_THROWS_AS(render_question(twice, "chair", 3), ConfigError);

  const auto ok = PromptTemplate::default_structural();
  CHECK_THROWS_AS(render_question(ok, "", 3), InvalidArgumentError);
  CHECK_THROWS_AS(render_question(ok, "chair", 0), InvalidArgumentError);
}

TEST_CASE("parse_response_lines strips numbering and deduplicates") {
  const auto lines = parse_response_lines(
      "1. oak texture\n2) Pine grain \n\n  3.   oak texture\nOAK TEXTURE\n"
      "plain line\n");
  REQUIRE(lines.size() == 3);
  CHECK(lines[0] == "oak texture");
  CHECK(lines[1] == "Pine grain");
  CHECK(lines[2] == "plain line");
}

TEST_CASE("collect_prompts happy path: 10 numbered lines") {
  std::string text;
  for (int i = 1; i <= 10; ++i) {
    text += std::to_string(i) + ". variant " + std::to_string(i) + "\n";
  }
  ScriptedClient client({text});
  auto set = collect_prompts(client, PromptTemplate::default_structural(),
                             "chair", 10);
  CHECK(set.prompts.size() == 10);
  CHECK(set.requested == 10);
  CHECK(set.class_name == "chair");
  CHECK(set.source == "chat-client");
  CHECK(client.calls() == 1);
  // Qualifiers are appended.
  for (const auto& p : set.prompts) {
    CHECK(p.find(", centered, clean background, no occlusion") !=
          std::string::npos);
  }
}

TEST_CASE("collect_prompts deduplicates case-insensitively") {
  ScriptedClient client({"oak texture\nOak Texture\n"});
  CollectOptions options;
  options.quality_qualifiers.clear();
  auto set = collect_prompts(client, PromptTemplate::default_texture(), "desk",
                             1, options);
  REQUIRE(set.prompts.size() == 1);
  CHECK(set.prompts[0] == "oak texture");
}

TEST_CASE("collect_prompts retries and accumulates until n") {
  // First call yields 4, second adds 6 more -> 10 after exactly 2 calls.
  ScriptedClient client(
      {"1. a\n2. b\n3. c\n4. d\n", "1. e\n2. f\n3. g\n4. h\n5. i\n6. j\n",
       "should never be requested"});
  auto set = collect_prompts(client, PromptTemplate::default_structural(),
                             "sofa", 10);
  CHECK(set.prompts.size() == 10);
  CHECK(client.calls() == 2);
}

TEST_CASE("collect_prompts tolerates a transport failure mid-retry") {
  ScriptedClient client({"1. a\n2. b\n", "<throw>", "1. c\n2. d\n"});
  auto set = collect_prompts(client, PromptTemplate::default_structural(),
                             "bed", 4);
  CHECK(set.prompts.size() == 4);
  CHECK(client.calls() == 3);
}

TEST_CASE("collect_prompts returns partial results when retries run out") {
  ScriptedClient client({"1. only\n", "", "", ""});
  auto set = collect_prompts(client, PromptTemplate::default_structural(),
                             "desk", 5);
  CHECK(set.prompts.size() == 1);
  CHECK(set.requested == 5);
  CHECK(client.calls() == 4);  // initial + 3 retries
}

TEST_CASE("collect_prompts error taxonomy") {
  // All transport failures -> UpstreamError carrying the cause.
  ScriptedClient dead({"<throw>", "<throw>", "<throw>", "<throw>"});
  CHECK_THROWS_WITH_AS(
      collect_prompts(dead, PromptTemplate::default_structural(), "bed", 3),
      doctest::Contains("connection reset"), UpstreamError);

  // Responses arrive but contain nothing usable -> ValidationError.
  ScriptedClient blank({"\n\n", "  \n", "", ""});
  CHECK_THROWS_AS(
      collect_prompts(blank, PromptTemplate::default_structural(), "bed", 3),
      ValidationError);
}

TEST_CASE("mock client is deterministic and distinct") {
  MockChatClient mock;
  const ChatRequest request{"", "describe chairs", 12};
  const auto a = mock.complete(request);
  const auto b = mock.complete(request);
  CHECK(a.text == b.text);

  const auto lines = parse_response_lines(a.text);
  CHECK(lines.size() == 12);
  std::set<std::string> distinct(lines.begin(), lines.end());
  CHECK(distinct.size() == 12);

  // Different question, different content.
  const auto c = mock.complete({"", "describe tables", 12});
  CHECK(c.text != a.text);
}

TEST_CASE("collect_prompts with the mock client is fully deterministic") {
  MockChatClient mock;
  auto a = collect_prompts(mock, PromptTemplate::default_structural(), "chair",
                           8);
  auto b = collect_prompts(mock, PromptTemplate::default_structural(), "chair",
                           8);
  CHECK(a.prompts == b.prompts);
  CHECK(a.prompts.size() == 8);
  CHECK(a.source == "fixture");
}

TEST_CASE("fixture client serves canned responses keyed by kind and class") {
  const char* json = R"({
    "structural": {"chair": ["1. first\n2. second\n", "3. third\n"]},
    "texture": {"chair": "1. velvet\n"}
  })";
  FixtureChatClient fixture(json);

  fixture.bind(PromptKind::Structural, "chair");
  CollectOptions options;
  options.quality_qualifiers.clear();
  auto set = collect_prompts(fixture, PromptTemplate::default_structural(),
                             "chair", 3, options);
  CHECK(set.prompts == std::vector<std::string>{"first", "second", "third"});

  fixture.bind(PromptKind::Texture, "chair");
  auto tex = collect_prompts(fixture, PromptTemplate::default_texture(),
                             "chair", 1, options);
  CHECK(tex.prompts == std::vector<std::string>{"velvet"});

  fixture.bind(PromptKind::Texture, "uncovered");
  CHECK_THROWS_AS(collect_prompts(fixture, PromptTemplate::default_texture(),
                                  "uncovered", 1, options),
                  UpstreamError);

  CHECK_THROWS_AS(FixtureChatClient("not json"), ParseError);
  CHECK_THROWS_AS(FixtureChatClient(R"({"structural": 3})"), ParseError);
}
