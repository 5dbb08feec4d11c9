#include "wignerlab/combinatorics.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <unordered_map>

namespace wignerlab {

Word::Word(std::vector<Letter> letters) : letters_(std::move(letters)) {
    if (letters_.empty()) {
        throw std::invalid_argument("word must contain at least one letter");
    }
    if (letters_.front() != 1) {
        throw std::invalid_argument("word must start at letter 1");
    }
    if (std::find(letters_.begin(), letters_.end(), Letter{0}) != letters_.end()) {
        throw std::invalid_argument("letters must be positive");
    }
}

std::vector<Letter> Word::support() const {
    std::vector<Letter> s(letters_);
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

std::string Word::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < letters_.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(letters_[i]);
    }
    return out;
}

int WordGraph::passage(Edge e) const {
    auto it = passage_counts.find(e);
    return it == passage_counts.end() ? 0 : it->second;
}

std::vector<Edge> WordGraph::edges() const {
    std::vector<Edge> out;
    out.reserve(passage_counts.size());
    for (const auto& [e, n] : passage_counts) out.push_back(e);
    return out;
}

Sentence::Sentence(std::vector<Word> words) : words_(std::move(words)) {
    if (words_.empty()) {
        throw std::invalid_argument("sentence must contain at least one word");
    }
}

std::vector<Letter> Sentence::support() const {
    std::vector<Letter> s;
    for (const auto& w : words_) {
        s.insert(s.end(), w.letters().begin(), w.letters().end());
    }
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

std::size_t Sentence::total_length() const {
    std::size_t n = 0;
    for (const auto& w : words_) n += w.length();
    return n;
}

std::string to_string(PairKind kind) { return kind == PairKind::Tree ? "tree" : "cycle"; }

namespace {

class Relabeler {
public:
    Letter operator()(Letter l) {
        auto [it, inserted] = map_.try_emplace(l, next_);
        if (inserted) ++next_;
        return it->second;
    }

private:
    std::unordered_map<Letter, Letter> map_;
    Letter next_ = 1;
};

WordGraph graph_of(std::span<const Word> words) {
    WordGraph g;
    std::set<Letter> verts;
    for (const auto& w : words) {
        const auto& s = w.letters();
        verts.insert(s.begin(), s.end());
        for (std::size_t i = 0; i + 1 < s.size(); ++i) {
            ++g.passage_counts[Edge::of(s[i], s[i + 1])];
        }
    }
    g.vertices.assign(verts.begin(), verts.end());
    for (const auto& [e, n] : g.passage_counts) {
        (e.is_self() ? g.self_edges : g.connecting_edges).push_back(e);
    }
    return g;
}

}  // namespace

Word canonicalize(const Word& word) {
    Relabeler relabel;
    std::vector<Letter> out;
    out.reserve(word.length());
    for (Letter l : word.letters()) out.push_back(relabel(l));
    return Word(std::move(out));
}

Sentence canonicalize(const Sentence& sentence) {
    Relabeler relabel;
    std::vector<Word> words;
    for (const auto& w : sentence.words()) {
        std::vector<Letter> out;
        out.reserve(w.length());
        for (Letter l : w.letters()) out.push_back(relabel(l));
        words.emplace_back(std::move(out));
    }
    return Sentence(std::move(words));
}

WordGraph build_graph(const Word& word) { return graph_of(std::span<const Word>(&word, 1)); }

WordGraph build_graph(const Sentence& sentence) { return graph_of(sentence.words()); }

Word simplify(const Word& word) {
    std::vector<Letter> out;
    for (Letter l : word.letters()) {
        if (out.empty() || out.back() != l) out.push_back(l);
    }
    return Word(std::move(out));
}

WordClass classify_word(const Word& word) {
    if (!word.closed()) {
        throw std::invalid_argument("classify_word: word " + word.to_string() + " is not closed");
    }
    const WordGraph g = build_graph(word);
    WordClass c;
    c.weak_wigner = std::all_of(g.passage_counts.begin(), g.passage_counts.end(),
                                [](const auto& kv) { return kv.second >= 2; });
    c.wigner = c.weak_wigner && 2 * g.vertices.size() == word.length() + 1;
    c.in_U = g.self_edges.empty();
    // The (1,1) step is the only self step, so the simplified word has length l(w) - 1. Words with
    // further self steps also have a Wigner simplification but lose weight and vanish in the limit.
    if (g.passage(Edge{1, 1}) == 1) {
        const Word s = simplify(word);
        c.in_A = s.length() + 1 == word.length() && classify_word(s).wigner;
    }
    return c;
}

PairClass classify_pair(const Word& first, const Word& second) {
    if (!first.closed() || !second.closed()) {
        throw std::invalid_argument("classify_pair: both words must be closed");
    }
    const Sentence sentence({first, second});
    const WordGraph g = build_graph(sentence);
    const WordGraph g1 = build_graph(first);
    const WordGraph g2 = build_graph(second);

    PairClass c;
    const bool p1 = std::all_of(g.passage_counts.begin(), g.passage_counts.end(),
                                [](const auto& kv) { return kv.second >= 2; });
    bool p2 = false;
    for (const auto& [e, n] : g1.passage_counts) {
        if (g2.passage(e) > 0) {
            p2 = true;
            break;
        }
    }
    c.weak_clt = p1 && p2;
    const std::size_t wt = g.vertices.size();
    c.clt = c.weak_clt && 2 * wt + 2 == first.length() + second.length();
    if (!c.clt) return c;

    const std::size_t ne = g.edge_count();
    if (wt == ne + 1) {
        c.kind = PairKind::Tree;
        int quadruple = 0;
        bool ok = true;
        for (const auto& [e, n] : g.passage_counts) {
            if (n == 4) ++quadruple;
            else if (n != 2) ok = false;
        }
        for (const WordGraph* gw : {&g1, &g2}) {
            for (const auto& [e, n] : gw->passage_counts) {
                if (n != 2) ok = false;
            }
        }
        c.structure_ok = ok && quadruple == 1;
    } else if (wt == ne) {
        c.kind = PairKind::Cycle;
        bool ok = std::all_of(g.passage_counts.begin(), g.passage_counts.end(),
                              [](const auto& kv) { return kv.second == 2; });
        for (const WordGraph* gw : {&g1, &g2}) {
            ok = ok && std::any_of(gw->passage_counts.begin(), gw->passage_counts.end(),
                                   [](const auto& kv) { return kv.second == 1; });
        }
        c.structure_ok = ok;
    } else {
        c.structure_ok = false;
    }
    return c;
}

std::string to_string(WordFilter filter) {
    switch (filter) {
        case WordFilter::All: return "all";
        case WordFilter::U: return "U";
        case WordFilter::V: return "V";
        case WordFilter::WeakWigner: return "weak_wigner";
        case WordFilter::Wigner: return "wigner";
        case WordFilter::A: return "A";
    }
    return "?";
}

WordFilter parse_word_filter(const std::string& name) {
    std::string n;
    for (char ch : name) n += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    if (n == "all") return WordFilter::All;
    if (n == "u") return WordFilter::U;
    if (n == "v") return WordFilter::V;
    if (n == "weak_wigner") return WordFilter::WeakWigner;
    if (n == "wigner") return WordFilter::Wigner;
    if (n == "a") return WordFilter::A;
    throw std::invalid_argument("unknown word filter '" + name + "'");
}

bool matches(const Word& word, WordFilter filter) {
    if (filter == WordFilter::All) return word.closed();
    const WordClass c = classify_word(word);
    switch (filter) {
        case WordFilter::All: return true;
        case WordFilter::U: return c.in_U;
        case WordFilter::V: return !c.in_U;
        case WordFilter::WeakWigner: return c.weak_wigner;
        case WordFilter::Wigner: return c.wigner;
        case WordFilter::A: return c.in_A;
    }
    return false;
}

namespace {

// Depth-first generation of canonical closed words: position i takes a letter in
// {1, ..., max + 1}; the last position is pinned to 1.
class WordWalker {
public:
    WordWalker(int k, WordFilter filter, const std::function<void(const Word&)>& visit)
        : k_(k), filter_(filter), visit_(visit), seq_(k + 1, 0), counts_((k + 2) * (k + 2), 0) {
        seq_[0] = 1;
        need_pairs_ = filter == WordFilter::WeakWigner || filter == WordFilter::Wigner;
        no_self_ = filter == WordFilter::U;
    }

    void run() { step(1, 1); }

private:
    int& count(Letter a, Letter b) {
        if (a > b) std::swap(a, b);
        return counts_[a * (k_ + 2) + b];
    }

    void step(int pos, Letter max_letter) {
        if (pos == k_ + 1) {
            if (singles_ != 0 && need_pairs_) return;
            Word w(std::vector<Letter>(seq_.begin(), seq_.end()));
            if (matches(w, filter_)) visit_(w);
            return;
        }
        const Letter hi = pos == k_ ? 1 : max_letter + 1;
        for (Letter l = 1; l <= hi; ++l) {
            const Letter prev = seq_[pos - 1];
            if (no_self_ && l == prev) continue;
            int& c = count(prev, l);
            ++c;
            if (c == 1) ++singles_;
            else if (c == 2) --singles_;
            const int remaining = k_ - pos;
            if (!need_pairs_ || singles_ <= remaining) {
                seq_[pos] = l;
                step(pos + 1, std::max(max_letter, l));
            }
            if (c == 1) --singles_;
            else if (c == 2) ++singles_;
            --c;
        }
    }

    int k_;
    WordFilter filter_;
    const std::function<void(const Word&)>& visit_;
    std::vector<Letter> seq_;
    std::vector<int> counts_;
    int singles_ = 0;
    bool need_pairs_ = false;
    bool no_self_ = false;
};

// Joint depth-first generation of canonical self-edge-free sentences (w1, w2) whose weight
// equals (k1 + k2) / 2 and whose union walk visits every edge at least twice.
class PairWalker {
public:
    PairWalker(int k1, int k2, const std::function<void(const CltPair&)>& visit)
        : k1_(k1), k2_(k2), target_(static_cast<Letter>((k1 + k2) / 2)), visit_(visit),
          total_(k1 + k2 + 2), seq_(total_, 0), stride_(target_ + 1),
          all_(stride_ * stride_, 0), first_(stride_ * stride_, 0), second_(stride_ * stride_, 0) {
        seq_[0] = 1;
        seq_[k1_ + 1] = 1;
    }

    void run() { step(1, 1); }

private:
    bool fixed(int pos) const { return pos == k1_ || pos == k1_ + 1 || pos == total_ - 1; }

    int free_after(int pos) const {
        int n = 0;
        for (int p = pos + 1; p < total_; ++p) {
            if (!fixed(p)) ++n;
        }
        return n;
    }

    void step(int pos, Letter max_letter) {
        if (pos == k1_ + 1) {
            step(pos + 1, max_letter);
            return;
        }
        if (pos == total_) {
            finish(max_letter);
            return;
        }
        const bool in_first = pos <= k1_;
        const Letter hi = fixed(pos) ? 1 : std::min<Letter>(max_letter + 1, target_);
        const Letter prev = seq_[pos - 1];
        const int traversed = in_first ? pos : pos - 1;
        const int remaining = k1_ + k2_ - traversed;
        const int free_left = free_after(pos);
        for (Letter l = 1; l <= hi; ++l) {
            if (l == prev) continue;
            const Letter new_max = std::max(max_letter, l);
            if (static_cast<int>(target_ - new_max) > free_left) continue;
            const std::size_t e = prev < l ? prev * stride_ + l : l * stride_ + prev;
            int& c = all_[e];
            ++c;
            if (c == 1) ++singles_;
            else if (c == 2) --singles_;
            ++(in_first ? first_ : second_)[e];
            if (singles_ <= remaining) {
                seq_[pos] = l;
                step(pos + 1, new_max);
            }
            --(in_first ? first_ : second_)[e];
            if (c == 1) --singles_;
            else if (c == 2) ++singles_;
            --c;
        }
    }

    void finish(Letter max_letter) {
        if (singles_ != 0 || max_letter != target_) return;
        bool shared = false;
        for (std::size_t e = 0; e < all_.size() && !shared; ++e) {
            shared = first_[e] > 0 && second_[e] > 0;
        }
        if (!shared) return;
        Word w1(std::vector<Letter>(seq_.begin(), seq_.begin() + k1_ + 1));
        Word w2(std::vector<Letter>(seq_.begin() + k1_ + 1, seq_.end()));
        const PairClass c = classify_pair(w1, w2);
        if (!c.clt || !c.kind) {
            throw std::logic_error("pair walker produced a non-CLT pair " + w1.to_string() +
                                   " | " + w2.to_string());
        }
        visit_(CltPair{std::move(w1), std::move(w2), *c.kind});
    }

    int k1_;
    int k2_;
    Letter target_;
    const std::function<void(const CltPair&)>& visit_;
    int total_;
    std::vector<Letter> seq_;
    std::size_t stride_;
    std::vector<int> all_;
    std::vector<int> first_;
    std::vector<int> second_;
    int singles_ = 0;
};

}  // namespace

void for_each_word(int k, WordFilter filter, const std::function<void(const Word&)>& visit,
                   const EnumerationCaps& caps) {
    if (k < 1) throw std::invalid_argument("enumerate_words: k must be positive");
    if (k > caps.max_word_k) {
        throw CapError("enumeration cap exceeded: k = " + std::to_string(k) + " > " +
                       std::to_string(caps.max_word_k));
    }
    WordWalker(k, filter, visit).run();
}

std::vector<Word> enumerate_words(int k, WordFilter filter, const EnumerationCaps& caps) {
    std::vector<Word> out;
    for_each_word(k, filter, [&](const Word& w) { out.push_back(w); }, caps);
    return out;
}

std::size_t count_words(int k, WordFilter filter, const EnumerationCaps& caps) {
    std::size_t n = 0;
    for_each_word(k, filter, [&](const Word&) { ++n; }, caps);
    return n;
}

void for_each_clt_pair(int k1, int k2, const std::function<void(const CltPair&)>& visit,
                       const EnumerationCaps& caps) {
    if (k1 < 2 || k2 < 2) throw std::invalid_argument("enumerate_clt_pairs: k1, k2 must be >= 2");
    if (k1 + k2 > caps.max_pair_sum) {
        throw CapError("enumeration cap exceeded: k1 + k2 = " + std::to_string(k1 + k2) + " > " +
                       std::to_string(caps.max_pair_sum));
    }
    if ((k1 + k2) % 2 != 0) return;
    PairWalker(k1, k2, visit).run();
}

std::vector<CltPair> enumerate_clt_pairs(int k1, int k2, const EnumerationCaps& caps) {
    std::vector<CltPair> out;
    for_each_clt_pair(k1, k2, [&](const CltPair& p) { out.push_back(p); }, caps);
    return out;
}

}  // namespace wignerlab
