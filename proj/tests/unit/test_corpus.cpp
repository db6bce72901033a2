#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "fixtures.hpp"
#include "structsum/corpus/encoded_pair.hpp"
#include "structsum/corpus/parsed_sentence.hpp"
#include "structsum/corpus/prune.hpp"
#include "structsum/corpus/structural_labels.hpp"
#include "structsum/corpus/toy_corpus.hpp"
#include "structsum/corpus/vocabulary.hpp"

namespace structsum {
namespace {

using namespace corpus;

std::vector<ParsedSentence> parse(const std::string& text) {
  std::istringstream in(text);
  return parse_conllu(in);
}

std::string row(int id, const std::string& form, const std::string& pos, int head, const std::string& rel) {
  return std::to_string(id) + "\t" + form + "\t_\t" + pos + "\t" + pos + "\t_\t" + std::to_string(head) + "\t" + rel +
         "\t_\t_\n";
}

// Depth of every token by walking to the root.
std::vector<int> walk_depths(const ParsedSentence& s) {
  std::vector<int> d;
  for (std::size_t i = 0; i < s.size(); ++i) {
    int depth = 0;
    for (int h = s.head[i]; h != 0; h = s.head[static_cast<std::size_t>(h - 1)]) ++depth;
    d.push_back(depth);
  }
  return d;
}

TEST(ParseConllu, TwoTokenTree) {
  auto s = parse(row(1, "a", "DT", 2, "det") + row(2, "b", "NN", 0, "root") + "\n");
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0].head, (std::vector<int>{2, 0}));
  EXPECT_EQ(std::count(s[0].head.begin(), s[0].head.end(), 0), 1);
}

TEST(ParseConllu, FigureSentenceMarksHadAsRoot) {
  auto s = parse(alaska_father_conllu());
  ASSERT_EQ(s.size(), 1u);
  auto it = std::find(s[0].tokens.begin(), s[0].tokens.end(), "had");
  ASSERT_NE(it, s[0].tokens.end());
  auto k = static_cast<std::size_t>(it - s[0].tokens.begin());
  EXPECT_EQ(s[0].head[k], 0);
  EXPECT_EQ(s[0].deprel[k], "root");
}

TEST(ParseConllu, NineColumnsFailsAtThatLine) {
  std::string text = "# comment\n" + row(1, "a", "DT", 2, "det") + "2\tb\t_\tNN\tNN\t_\t0\troot\t_\n\n";
  try {
    parse(text);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(ParseConllu, NonIntegerHeadFails) {
  std::string text = row(1, "a", "DT", 2, "det") + "2\tb\t_\tNN\tNN\t_\tx\troot\t_\t_\n\n";
  EXPECT_THROW(parse(text), ParseError);
}

TEST(ParseConllu, CycleFails) {
  std::string text = row(1, "a", "DT", 2, "det") + row(2, "b", "NN", 1, "nsubj") + row(3, "c", "VB", 0, "root") + "\n";
  EXPECT_THROW(parse(text), ParseError);
}

TEST(ParseConllu, SkipsMultiwordAndEmptyNodes) {
  std::string text = "1-2\tdon't\t_\t_\t_\t_\t_\t_\t_\t_\n" + row(1, "do", "VBP", 0, "root") +
                     row(2, "n't", "RB", 1, "neg") + "2.1\tghost\t_\tNN\tNN\t_\t_\t_\t_\t_\n\n";
  auto s = parse(text);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0].tokens, (std::vector<std::string>{"do", "n't"}));
}

TEST(ParseConllu, UposColumnOnRequest) {
  std::string text = "1\tgo\t_\tVERB\tVB\t_\t0\troot\t_\t_\n\n";
  std::istringstream in(text);
  auto s = parse_conllu(in, {PosColumn::Upos, true});
  EXPECT_EQ(s[0].pos[0], "VERB");
  std::istringstream in2(text);
  EXPECT_EQ(parse_conllu(in2)[0].pos[0], "VB");
}

TEST(ParseConllu, WriteThenReadRoundTrips) {
  std::mt19937_64 rng(5);
  auto s = testing::random_sentence(7, {"x", "y", "z"}, rng);
  std::ostringstream out;
  write_conllu(out, s);
  auto back = parse(out.str());
  ASSERT_EQ(back.size(), 1u);
  EXPECT_EQ(back[0].tokens, s.tokens);
  EXPECT_EQ(back[0].head, s.head);
  EXPECT_EQ(back[0].deprel, s.deprel);
  EXPECT_EQ(back[0].pos, s.pos);
}

TEST(StructuralLabels, HadExampleFromFigureSentence) {
  auto s = parse(alaska_father_conllu())[0];
  auto labels = extract_structural_labels(s);
  auto k = static_cast<std::size_t>(std::find(s.tokens.begin(), s.tokens.end(), "had") - s.tokens.begin());
  EXPECT_EQ(labels.depth[k], 0);
  EXPECT_EQ(labels.in_label[k], "root");
  EXPECT_EQ(labels.out_degree[k], 3);
  EXPECT_EQ(labels.pos_tag[k], "VBD");
  EXPECT_EQ(labels.abs_pos[k], 9);
  int b = labels.rel_pos_bucket[k];
  EXPECT_EQ(b, 6);
  double ratio = 9.0 / static_cast<double>(s.size());
  EXPECT_GT(ratio, 0.5);
  EXPECT_LE(ratio, 0.6);
}

TEST(StructuralLabels, SingleToken) {
  ParsedSentence s{{"hi"}, {"UH"}, {0}, {"root"}};
  auto l = extract_structural_labels(s);
  EXPECT_EQ(l.depth[0], 0);
  EXPECT_EQ(l.out_degree[0], 0);
  EXPECT_EQ(l.abs_pos[0], 1);
  EXPECT_EQ(l.rel_pos_bucket[0], 10);
}

TEST(StructuralLabels, ChainDepths) {
  ParsedSentence s{{"a", "b", "c"}, {"X", "X", "X"}, {0, 1, 2}, {"root", "dep", "dep"}};
  EXPECT_EQ(extract_structural_labels(s).depth, (std::vector<int>{0, 1, 2}));
}

TEST(StructuralLabels, BucketsAreRightClosed) {
  EXPECT_EQ(relative_position_bucket(5, 10), 5);
  EXPECT_EQ(relative_position_bucket(1, 2), 5);
  EXPECT_EQ(relative_position_bucket(6, 10), 6);
  EXPECT_EQ(relative_position_bucket(1, 100), 1);
  EXPECT_EQ(relative_position_bucket(100, 100), 10);
  // Exhaustive check of the bucket inequality against rational arithmetic.
  for (int len = 1; len <= 60; ++len) {
    for (int pos = 1; pos <= len; ++pos) {
      int b = relative_position_bucket(pos, len);
      EXPECT_LT((b - 1) * len, 10 * pos) << pos << "/" << len;
      EXPECT_LE(10 * pos, b * len) << pos << "/" << len;
    }
  }
}

TEST(StructuralLabels, ClipsDepthAndPosition) {
  const std::size_t n = 130;
  ParsedSentence s;
  for (std::size_t i = 0; i < n; ++i) {
    s.tokens.push_back("t");
    s.pos.push_back("NN");
    s.head.push_back(static_cast<int>(i));  // chain rooted at the first token
    s.deprel.push_back(i == 0 ? "root" : "dep");
  }
  auto l = extract_structural_labels(s, {20, 100});
  EXPECT_EQ(*std::max_element(l.depth.begin(), l.depth.end()), 20);
  EXPECT_EQ(*std::max_element(l.abs_pos.begin(), l.abs_pos.end()), 100);
}

TEST(StructuralLabels, TreePropertiesOnRandomTrees) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = 1 + static_cast<std::size_t>(trial % 25);
    auto s = testing::random_sentence(n, {"a", "b", "c", "d"}, rng);
    auto l = extract_structural_labels(s, {1000, 1000});
    int total_out = 0;
    for (int d : l.out_degree) total_out += d;
    EXPECT_EQ(total_out, static_cast<int>(n) - 1);
    EXPECT_EQ(l.depth, walk_depths(s));
    for (std::size_t i = 0; i < n; ++i) {
      if (s.head[i] == 0) {
        EXPECT_EQ(l.depth[i], 0);
        EXPECT_EQ(l.in_label[i], "root");
      } else {
        EXPECT_EQ(l.depth[i], l.depth[static_cast<std::size_t>(s.head[i] - 1)] + 1);
      }
      EXPECT_GE(l.rel_pos_bucket[i], 1);
      EXPECT_LE(l.rel_pos_bucket[i], 10);
    }
  }
}

TEST(ValidateTree, RejectsBadTrees) {
  EXPECT_THROW(validate_tree({{"a", "b"}, {"X", "X"}, {0, 0}, {"root", "root"}}), std::invalid_argument);
  EXPECT_THROW(validate_tree({{"a"}, {"X"}, {1}, {"root"}}), std::invalid_argument);
  EXPECT_THROW(validate_tree({{"a", "b"}, {"X"}, {0, 1}, {"root", "dep"}}), std::invalid_argument);
  EXPECT_THROW(validate_tree({{"a", "b"}, {"X", "X"}, {0, 3}, {"root", "dep"}}), std::invalid_argument);
}

TEST(Vocabulary, FrequencyOrder) {
  std::vector<TrainingText> corpus = {{{"a", "a", "b"}, {"a"}, std::nullopt}};
  auto v = build_vocabularies(corpus, 2, 2);
  EXPECT_EQ(v.words().token(kNumReserved), "a");
  EXPECT_EQ(v.words().token(kNumReserved + 1), "b");
  EXPECT_EQ(v.input_size(), kNumReserved + 2);
}

TEST(Vocabulary, TiesKeepFirstOccurrence) {
  std::vector<TrainingText> corpus = {{{"z", "y", "x"}, {"y", "z", "x"}, std::nullopt}};
  auto v = build_vocabularies(corpus, 3, 1);
  EXPECT_EQ(v.words().token(kNumReserved), "z");
  EXPECT_EQ(v.words().token(kNumReserved + 1), "y");
  EXPECT_EQ(v.words().token(kNumReserved + 2), "x");
  EXPECT_TRUE(v.in_output("z"));
  EXPECT_FALSE(v.in_output("y"));
  EXPECT_EQ(v.output_id("y"), kUnkId);
}

TEST(Vocabulary, ReservedTokensAndUnknownLabels) {
  auto d = testing::toy_dataset(20, 3);
  const auto& v = d.vocab;
  EXPECT_EQ(v.words().token(kPadId), kPadToken);
  EXPECT_EQ(v.words().token(kUnkId), kUnkToken);
  EXPECT_EQ(v.words().token(kBosId), kBosToken);
  EXPECT_EQ(v.words().token(kEosId), kEosToken);
  EXPECT_EQ(v.words().id("never-seen-word"), kUnkId);
  EXPECT_EQ(v.labels(LabelCategory::InLabel).id("never-seen-relation"), kLabelUnkId);
  EXPECT_TRUE(v.labels(LabelCategory::InLabel).contains("root"));
}

TEST(Vocabulary, OutputIsTopOfInputRanking) {
  auto d = testing::toy_dataset(40, 9, 30, 10);
  const auto& v = d.vocab;
  EXPECT_EQ(v.output_size(), kNumReserved + 10);
  EXPECT_EQ(v.input_size(), kNumReserved + 30);
  // Independent frequency count over source and summary text.
  std::map<std::string, int> freq;
  for (std::size_t k = 0; k < d.sources.size(); ++k) {
    for (const auto& t : d.sources[k].tokens) ++freq[t];
    for (const auto& t : d.summaries[k]) ++freq[t];
  }
  int min_in_output = INT32_MAX;
  for (int id = kNumReserved; id < v.output_size(); ++id) min_in_output = std::min(min_in_output, freq[v.words().token(id)]);
  for (const auto& [w, f] : freq) {
    if (!v.in_output(w)) EXPECT_LE(f, min_in_output) << w;
  }
}

TEST(Vocabulary, Errors) {
  std::vector<TrainingText> empty;
  EXPECT_THROW(build_vocabularies(empty, 5, 2), std::invalid_argument);
  std::vector<TrainingText> one = {{{"a"}, {"a"}, std::nullopt}};
  EXPECT_THROW(build_vocabularies(one, 2, 3), std::invalid_argument);
}

TEST(Vocabulary, SaveLoadPreservesHash) {
  auto d = testing::toy_dataset(30, 4, 50, 20);
  testing::TempDir dir("vocab");
  d.vocab.save(dir.path());
  auto back = Vocabulary::load(dir.path());
  EXPECT_EQ(back.hash(), d.vocab.hash());
  EXPECT_EQ(back.output_size(), d.vocab.output_size());
  EXPECT_EQ(back.words().tokens(), d.vocab.words().tokens());
  auto other = testing::toy_dataset(30, 4, 50, 19);
  EXPECT_NE(other.vocab.hash(), d.vocab.hash());
}

TEST(EncodedPair, IdsInRangeAndCopyPositionsExact) {
  auto d = testing::toy_dataset(60, 8, 40, 15);
  for (const auto& p : d.pairs) {
    for (int id : p.src_ids) {
      EXPECT_GE(id, 0);
      EXPECT_LT(id, d.vocab.input_size());
    }
    for (int id : p.tgt_ids) {
      EXPECT_GE(id, 0);
      EXPECT_LT(id, d.vocab.output_size());
    }
    for (auto c : kLabelCategories) {
      for (int id : p.src_struct_ids[static_cast<std::size_t>(c)]) EXPECT_LT(id, d.vocab.label_size(c));
    }
    EXPECT_EQ(p.tgt_ids.back(), kEosId);
    EXPECT_EQ(p.target_steps(), p.tgt_surface.size() + 1);
    ASSERT_EQ(p.tgt_copy_positions.size(), p.tgt_surface.size());
    for (std::size_t t = 0; t < p.tgt_surface.size(); ++t) {
      std::vector<int> expected;
      for (std::size_t i = 0; i < p.src_surface.size(); ++i) {
        if (p.src_surface[i] == p.tgt_surface[t]) expected.push_back(static_cast<int>(i));
      }
      EXPECT_EQ(p.tgt_copy_positions[t], expected);
    }
  }
}

TEST(EncodedPair, ParentIndexFollowsHeads) {
  auto d = testing::toy_dataset(10, 2);
  for (std::size_t k = 0; k < d.pairs.size(); ++k) {
    const auto& s = d.sources[k];
    for (std::size_t i = 0; i < s.size(); ++i) EXPECT_EQ(d.pairs[k].parent_index[i], s.head[i] - 1);
    EXPECT_TRUE(d.pairs[k].has_structure);
  }
}

TEST(EncodedPair, RoundTripExceptUnknown) {
  auto d = testing::toy_dataset(50, 6, 25, 10);
  for (std::size_t k = 0; k < d.pairs.size(); ++k) {
    auto back = decode_ids(d.pairs[k].src_ids, d.vocab);
    ASSERT_EQ(back.size(), d.sources[k].tokens.size());
    for (std::size_t i = 0; i < back.size(); ++i) {
      if (d.pairs[k].src_ids[i] == kUnkId) {
        EXPECT_FALSE(d.vocab.words().contains(d.sources[k].tokens[i]));
      } else {
        EXPECT_EQ(back[i], d.sources[k].tokens[i]);
      }
    }
  }
}

TEST(EncodedPair, PlainTextUsesUnknownLabels) {
  auto d = testing::toy_dataset(10, 2);
  auto p = encode_pair({"officials", "said"}, {"said"}, d.vocab, nullptr);
  EXPECT_FALSE(p.has_structure);
  for (auto c : kLabelCategories) {
    for (int id : p.src_struct_ids[static_cast<std::size_t>(c)]) EXPECT_EQ(id, kLabelUnkId);
  }
  EXPECT_EQ(p.parent_index, (std::vector<int>{-1, -1}));
}

TEST(EncodedPair, MismatchedParseThrows) {
  auto d = testing::toy_dataset(10, 2);
  EXPECT_THROW(encode_pair({"a", "b"}, {"a"}, d.vocab, &d.sources[0]), std::invalid_argument);
}

TEST(Prune, Rules) {
  PruneConfig rules;
  std::vector<std::string> src = {"the", "council", "approved", "the", "budget", "on", "monday"};
  EXPECT_TRUE(prune_pair(src, {"council", "approves", "budget"}, rules).keep);
  auto same = prune_pair(src, src, rules);
  EXPECT_FALSE(same.keep);
  EXPECT_EQ(same.reason, "repetitive");
  auto disjoint = prune_pair(src, {"storm", "hits", "coast"}, rules);
  EXPECT_FALSE(disjoint.keep);
  EXPECT_EQ(disjoint.reason, "overlap");
  // Stopwords alone do not count as overlap.
  EXPECT_FALSE(prune_pair(src, {"the", "on"}, rules).keep);
  EXPECT_FALSE(prune_pair({"a", "b"}, {"a", "b", "c"}, rules).keep);
  EXPECT_FALSE(prune_pair(src, {"council"}, rules).keep);
  rules.enabled = false;
  EXPECT_TRUE(prune_pair(src, src, rules).keep);
}

TEST(ToyCorpus, DeterministicDistinctAndParsed) {
  auto a = generate_toy_corpus(200, 5);
  auto b = generate_toy_corpus(200, 5);
  ASSERT_EQ(a.size(), 200u);
  std::set<std::string> seen;
  for (std::size_t k = 0; k < a.size(); ++k) {
    EXPECT_EQ(a[k].source.tokens, b[k].source.tokens);
    EXPECT_EQ(a[k].summary, b[k].summary);
    EXPECT_NO_THROW(validate_tree(a[k].source));
    EXPECT_TRUE(prune_pair(a[k].source.tokens, a[k].summary, {}).keep) << join_tokens(a[k].source.tokens);
    seen.insert(join_tokens(a[k].source.tokens) + "|" + join_tokens(a[k].summary));
  }
  EXPECT_EQ(seen.size(), 200u);
}

TEST(ToyCorpus, CopyTaskSpansFollowMarker) {
  auto pairs = generate_copy_task({50, 3, "rare", 0, "@"});
  std::set<std::string> rare;
  for (const auto& p : pairs) {
    auto at = std::find(p.source.begin(), p.source.end(), "@");
    ASSERT_NE(at, p.source.end());
    ASSERT_GE(p.source.end() - at, 4);
    EXPECT_EQ(std::vector<std::string>(at + 1, at + 4), p.summary);
    EXPECT_NE(std::find(p.summary.begin(), p.summary.end(), p.rare_token), p.summary.end());
    EXPECT_TRUE(rare.insert(p.rare_token).second);
  }
}

}  // namespace
}  // namespace structsum
