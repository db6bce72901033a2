#include "structsum/corpus/toy_corpus.hpp"

#include <array>
#include <filesystem>
#include <fstream>
#include <set>
#include <stdexcept>

#include "structsum/corpus/encoded_pair.hpp"

namespace structsum::corpus {
namespace {

// splitmix64: portable, unlike std:: distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  template <typename T>
  const T& pick(const std::vector<T>& v) {
    return v[static_cast<std::size_t>(next() % v.size())];
  }

 private:
  std::uint64_t state_;
};

struct Verb {
  std::string past;
  std::string present;
};

const std::vector<std::string> kSubjects = {"government", "council", "police",  "minister", "company",
                                            "union",      "court",   "army",    "bank",     "senate",
                                            "mayor",      "farmers", "school",  "hospital", "airline",
                                            "factory",    "museum",  "coach",   "judge",    "navy"};
const std::vector<std::string> kObjects = {"charges", "plan", "report", "deal",  "budget", "tax",
                                           "strike",  "ban",  "loan",   "law",   "fund",   "merger",
                                           "reform",  "vote", "probe",  "truce", "tariff", "contract"};
const std::vector<Verb> kVerbs = {{"filed", "files"},         {"approved", "approves"}, {"rejected", "rejects"},
                                  {"announced", "announces"}, {"launched", "launches"}, {"backed", "backs"},
                                  {"blocked", "blocks"},      {"signed", "signs"},      {"proposed", "proposes"},
                                  {"delayed", "delays"}};
const std::vector<std::string> kAdjectives = {"new", "local", "national", "major", "public", "rural", "federal", "former"};
const std::vector<std::string> kPlaces = {"paris", "tokyo", "cairo", "lima", "oslo", "delhi", "rome", "seoul"};
const std::vector<std::string> kDays = {"monday", "tuesday", "wednesday", "thursday", "friday", "saturday", "sunday"};

struct Tok {
  std::string form;
  std::string pos;
  int head;
  std::string rel;
};

ParsedSentence build(const std::vector<Tok>& toks) {
  ParsedSentence s;
  for (const auto& t : toks) {
    s.tokens.push_back(t.form);
    s.pos.push_back(t.pos);
    s.head.push_back(t.head);
    s.deprel.push_back(t.rel);
  }
  validate_tree(s);
  return s;
}

ToyPair make_pair(Rng& rng) {
  const std::string& subj = rng.pick(kSubjects);
  std::string subj2 = rng.pick(kSubjects);
  while (subj2 == subj) subj2 = rng.pick(kSubjects);
  const std::string& obj = rng.pick(kObjects);
  const Verb& verb = rng.pick(kVerbs);
  const std::string& adj = rng.pick(kAdjectives);
  const std::string& adj2 = rng.pick(kAdjectives);
  const std::string& place = rng.pick(kPlaces);
  const std::string& day = rng.pick(kDays);

  switch (rng.next() % 4) {
    case 0:
      // the ADJ SUBJ VERB a ADJ2 OBJ in PLACE on DAY .
      return {build({{"the", "DT", 3, "det"},
                     {adj, "JJ", 3, "amod"},
                     {subj, "NN", 4, "nsubj"},
                     {verb.past, "VBD", 0, "root"},
                     {"a", "DT", 7, "det"},
                     {adj2, "JJ", 7, "amod"},
                     {obj, "NN", 4, "dobj"},
                     {"in", "IN", 9, "case"},
                     {place, "NNP", 4, "nmod"},
                     {"on", "IN", 11, "case"},
                     {day, "NNP", 4, "nmod"},
                     {".", ".", 4, "punct"}}),
              {subj, verb.present, adj2, obj}};
    case 1:
      // the SUBJ that was ADJ VERB the OBJ on DAY .
      return {build({{"the", "DT", 2, "det"},
                     {subj, "NN", 6, "nsubj"},
                     {"that", "WDT", 5, "nsubj"},
                     {"was", "VBD", 5, "cop"},
                     {adj, "JJ", 2, "acl:relcl"},
                     {verb.past, "VBD", 0, "root"},
                     {"the", "DT", 8, "det"},
                     {obj, "NN", 6, "dobj"},
                     {"on", "IN", 10, "case"},
                     {day, "NNP", 6, "nmod"},
                     {".", ".", 6, "punct"}}),
              {subj, verb.present, obj}};
    case 2:
      // officials in PLACE said the SUBJ VERB the OBJ .
      return {build({{"officials", "NNS", 4, "nsubj"},
                     {"in", "IN", 3, "case"},
                     {place, "NNP", 1, "nmod"},
                     {"said", "VBD", 0, "root"},
                     {"the", "DT", 6, "det"},
                     {subj, "NN", 7, "nsubj"},
                     {verb.past, "VBD", 4, "ccomp"},
                     {"the", "DT", 9, "det"},
                     {obj, "NN", 7, "dobj"},
                     {".", ".", 4, "punct"}}),
              {place, subj, verb.present, obj}};
    default:
      // PLACE 's SUBJ and SUBJ2 VERB the OBJ on DAY .
      return {build({{place, "NNP", 3, "nmod:poss"},
                     {"'s", "POS", 1, "case"},
                     {subj, "NN", 6, "nsubj"},
                     {"and", "CC", 3, "cc"},
                     {subj2, "NN", 3, "conj"},
                     {verb.past, "VBD", 0, "root"},
                     {"the", "DT", 8, "det"},
                     {obj, "NN", 6, "dobj"},
                     {"on", "IN", 10, "case"},
                     {day, "NNP", 6, "nmod"},
                     {".", ".", 6, "punct"}}),
              {subj, "and", subj2, verb.present, obj}};
  }
}

}  // namespace

std::vector<ToyPair> generate_toy_corpus(std::size_t count, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<ToyPair> out;
  std::set<std::vector<std::string>> seen;
  std::size_t attempts = 0;
  while (out.size() < count) {
    if (++attempts > count * 1000) throw std::runtime_error("generate_toy_corpus: template space exhausted");
    ToyPair p = make_pair(rng);
    if (seen.insert(p.source.tokens).second) out.push_back(std::move(p));
  }
  return out;
}

void write_toy_split(const std::string& dir, const std::string& split, const std::vector<ToyPair>& pairs) {
  std::filesystem::create_directories(dir);
  std::ofstream src(std::filesystem::path(dir) / (split + ".source.txt"), std::ios::binary);
  std::ofstream conllu(std::filesystem::path(dir) / (split + ".conllu"), std::ios::binary);
  std::ofstream sum(std::filesystem::path(dir) / (split + ".summary.txt"), std::ios::binary);
  if (!src || !conllu || !sum) throw std::runtime_error("cannot write toy corpus into '" + dir + "'");
  for (const auto& p : pairs) {
    src << join_tokens(p.source.tokens) << '\n';
    write_conllu(conllu, p.source);
    sum << join_tokens(p.summary) << '\n';
  }
}

std::vector<CopyPair> generate_copy_task(const CopyTaskOptions& options) {
  static const std::vector<std::string> filler = {"alpha", "beta", "gamma", "delta", "omega", "sigma",
                                                  "kappa", "theta", "zeta",  "lambda", "rho",  "tau"};
  Rng rng(options.seed);
  std::vector<CopyPair> out;
  for (std::size_t n = 0; n < options.count; ++n) {
    std::size_t before = 1 + rng.next() % 3;
    std::size_t after = 1 + rng.next() % 2;
    std::string rare = options.rare_prefix + std::to_string(options.rare_offset + n);
    std::vector<std::string> span = {rng.pick(filler), rng.pick(filler), rng.pick(filler)};
    span[rng.next() % 3] = rare;

    CopyPair p;
    for (std::size_t i = 0; i < before; ++i) p.source.push_back(rng.pick(filler));
    p.source.push_back(options.marker);
    p.source.insert(p.source.end(), span.begin(), span.end());
    for (std::size_t i = 0; i < after; ++i) p.source.push_back(rng.pick(filler));
    p.summary = span;
    p.rare_token = rare;
    out.push_back(std::move(p));
  }
  return out;
}

std::string alaska_father_conllu() {
  return "# text = Alaska father who was too drunk to drive had his 11-year-old son take the wheel .\n"
         "1\tAlaska\t_\tPROPN\tNNP\t_\t2\tcompound\t_\t_\n"
         "2\tfather\t_\tNOUN\tNN\t_\t9\tnsubj\t_\t_\n"
         "3\twho\t_\tPRON\tWP\t_\t6\tnsubj\t_\t_\n"
         "4\twas\t_\tAUX\tVBD\t_\t6\tcop\t_\t_\n"
         "5\ttoo\t_\tADV\tRB\t_\t6\tadvmod\t_\t_\n"
         "6\tdrunk\t_\tADJ\tJJ\t_\t2\tacl:relcl\t_\t_\n"
         "7\tto\t_\tPART\tTO\t_\t8\tmark\t_\t_\n"
         "8\tdrive\t_\tVERB\tVB\t_\t6\txcomp\t_\t_\n"
         "9\thad\t_\tVERB\tVBD\t_\t0\troot\t_\t_\n"
         "10\this\t_\tPRON\tPRP$\t_\t12\tnmod:poss\t_\t_\n"
         "11\t11-year-old\t_\tADJ\tJJ\t_\t12\tamod\t_\t_\n"
         "12\tson\t_\tNOUN\tNN\t_\t13\tnsubj\t_\t_\n"
         "13\ttake\t_\tVERB\tVB\t_\t9\tccomp\t_\t_\n"
         "14\tthe\t_\tDET\tDT\t_\t15\tdet\t_\t_\n"
         "15\twheel\t_\tNOUN\tNN\t_\t13\tdobj\t_\t_\n"
         "16\t.\t_\tPUNCT\t.\t_\t9\tpunct\t_\t_\n"
         "\n";
}

}  // namespace structsum::corpus
