#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace wignerlab {

using Letter = std::uint32_t;

/// Closed-walk word over positive letters. Every word in this library starts at 1.
class Word {
public:
    Word() = default;
    /// Throws std::invalid_argument for an empty sequence, a zero letter or a first letter other than 1.
    explicit Word(std::vector<Letter> letters);
    Word(std::initializer_list<Letter> letters) : Word(std::vector<Letter>(letters)) {}

    const std::vector<Letter>& letters() const { return letters_; }
    std::size_t length() const { return letters_.size(); }
    bool closed() const { return !letters_.empty() && letters_.front() == letters_.back(); }
    std::vector<Letter> support() const;
    std::size_t weight() const { return support().size(); }
    std::string to_string() const;

    auto operator<=>(const Word&) const = default;

private:
    std::vector<Letter> letters_;
};

/// Undirected edge with lo <= hi.
struct Edge {
    Letter lo = 0;
    Letter hi = 0;

    static Edge of(Letter a, Letter b) { return a <= b ? Edge{a, b} : Edge{b, a}; }
    bool is_self() const { return lo == hi; }
    auto operator<=>(const Edge&) const = default;
};

struct WordGraph {
    std::vector<Letter> vertices;            // sorted
    std::map<Edge, int> passage_counts;      // traversals in either direction
    std::vector<Edge> self_edges;
    std::vector<Edge> connecting_edges;

    std::size_t edge_count() const { return passage_counts.size(); }
    int passage(Edge e) const;
    std::vector<Edge> edges() const;
};

class Sentence {
public:
    explicit Sentence(std::vector<Word> words);

    const std::vector<Word>& words() const { return words_; }
    std::vector<Letter> support() const;
    std::size_t weight() const { return support().size(); }
    std::size_t total_length() const;

    auto operator<=>(const Sentence&) const = default;

private:
    std::vector<Word> words_;
};

enum class PairKind { Tree, Cycle };

std::string to_string(PairKind kind);

/// Relabels letters by order of first occurrence. Equivalent words share a canonical form.
Word canonicalize(const Word& word);
/// Joint relabeling across all words, scanning them in order.
Sentence canonicalize(const Sentence& sentence);

WordGraph build_graph(const Word& word);
WordGraph build_graph(const Sentence& sentence);

/// Collapses each run of equal adjacent letters to one letter.
Word simplify(const Word& word);

struct WordClass {
    bool weak_wigner = false;
    bool wigner = false;
    bool in_U = false;   // no self edge
    bool in_A = false;   // (1,1) is the single self step and the simplified word is Wigner
};

/// Throws std::invalid_argument for a word that is not closed.
WordClass classify_word(const Word& word);

struct PairClass {
    bool weak_clt = false;
    bool clt = false;
    std::optional<PairKind> kind;
    // For CLT pairs: the tree case has one edge with total passage 4 and the rest 2;
    // the cycle case has every total passage 2 and each word owns a singly visited edge.
    bool structure_ok = true;
};

PairClass classify_pair(const Word& first, const Word& second);

enum class WordFilter { All, U, V, WeakWigner, Wigner, A };

std::string to_string(WordFilter filter);
/// Accepts all, U, V, weak_wigner, wigner, A (case-insensitive for the set letters).
WordFilter parse_word_filter(const std::string& name);

bool matches(const Word& word, WordFilter filter);

struct EnumerationCaps {
    int max_word_k = 10;
    int max_pair_sum = 14;
};

class CapError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Visits one canonical representative per class of closed words of length k + 1
/// passing the filter, in lexicographic order.
void for_each_word(int k, WordFilter filter, const std::function<void(const Word&)>& visit,
                   const EnumerationCaps& caps = {});
std::vector<Word> enumerate_words(int k, WordFilter filter, const EnumerationCaps& caps = {});
std::size_t count_words(int k, WordFilter filter, const EnumerationCaps& caps = {});

struct CltPair {
    Word first;
    Word second;
    PairKind kind;
};

/// Visits one representative per sentence class of CLT pairs of self-edge-free words with
/// lengths k1 + 1 and k2 + 1. Nothing is visited when k1 + k2 is odd.
void for_each_clt_pair(int k1, int k2, const std::function<void(const CltPair&)>& visit,
                       const EnumerationCaps& caps = {});
std::vector<CltPair> enumerate_clt_pairs(int k1, int k2, const EnumerationCaps& caps = {});

}  // namespace wignerlab
