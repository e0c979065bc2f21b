#include "buffon/grammar.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>
#include <type_traits>

namespace buffon {

namespace {

std::vector<std::string> split_tokens(std::string_view text) {
    std::vector<std::string> out;
    std::string current;
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c)) || c == '|') {
            if (!current.empty()) out.push_back(std::move(current));
            current.clear();
            if (c == '|') out.emplace_back("|");
        } else {
            current.push_back(c);
        }
    }
    if (!current.empty()) out.push_back(std::move(current));
    return out;
}

bool is_identifier(const std::string& s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    return std::all_of(s.begin(), s.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
    });
}

}  // namespace

BistochGrammar BistochGrammar::parse(std::string_view text, std::string name) {
    struct RawLine {
        std::size_t line;
        std::string lhs;
        std::vector<std::vector<std::string>> alternatives;
    };
    std::vector<RawLine> raw;

    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto end = std::min(text.find('\n', start), text.size());
        std::string_view line = text.substr(start, end - start);
        start = end + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        const auto arrow = line.find("->");
        const auto tokens_lhs = split_tokens(line.substr(0, std::min(arrow, line.size())));
        if (arrow == std::string_view::npos) {
            if (!tokens_lhs.empty()) throw GrammarError("expected 'X -> H ... | T ...'", line_no);
            continue;
        }
        if (tokens_lhs.size() != 1 || !is_identifier(tokens_lhs[0]))
            throw GrammarError("left side must be a single nonterminal", line_no);
        RawLine entry{line_no, tokens_lhs[0], {{}}};
        for (auto& token : split_tokens(line.substr(arrow + 2))) {
            if (token == "|") {
                entry.alternatives.emplace_back();
            } else {
                entry.alternatives.back().push_back(std::move(token));
            }
        }
        raw.push_back(std::move(entry));
    }
    if (raw.empty()) throw GrammarError("no productions", line_no);

    BistochGrammar g;
    g.name_ = std::move(name);
    std::map<std::string, std::size_t> index;
    for (const auto& entry : raw) {
        if (entry.lhs == "H" || entry.lhs == "T")
            throw GrammarError("'H' and 'T' are terminals", entry.line);
        if (!index.emplace(entry.lhs, g.symbols_.size()).second)
            throw GrammarError("second production for '" + entry.lhs + "'", entry.line);
        g.symbols_.push_back(entry.lhs);
    }
    g.productions_.resize(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        const auto& entry = raw[i];
        if (entry.alternatives.size() > 2)
            throw GrammarError("at most two alternatives ('H ...' and 'T ...')", entry.line);
        for (const auto& alt : entry.alternatives) {
            if (alt.empty()) throw GrammarError("empty alternative", entry.line);
            const bool heads = alt[0] == "H";
            if (!heads && alt[0] != "T")
                throw GrammarError("alternative must start with H or T", entry.line);
            auto& slot = heads ? g.productions_[i].heads : g.productions_[i].tails;
            if (slot) throw GrammarError(std::string("two alternatives start with ") + alt[0], entry.line);
            std::vector<std::size_t> rhs;
            for (std::size_t k = 1; k < alt.size(); ++k) {
                const auto found = index.find(alt[k]);
                if (alt[k] == "H" || alt[k] == "T")
                    throw GrammarError("terminal '" + alt[k] + "' after the first position", entry.line);
                if (found == index.end())
                    throw GrammarError("undefined nonterminal '" + alt[k] + "'", entry.line);
                rhs.push_back(found->second);
            }
            slot = std::move(rhs);
        }
    }

    // Least fixpoint: a nonterminal is productive once some alternative has
    // only productive symbols.
    std::vector<bool> productive(g.size(), false);
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t i = 0; i < g.size(); ++i) {
            if (productive[i]) continue;
            const auto ok = [&](const Alternative& alt) {
                return alt && std::all_of(alt->begin(), alt->end(), [&](std::size_t s) { return productive[s]; });
            };
            if (ok(g.productions_[i].heads) || ok(g.productions_[i].tails)) {
                productive[i] = true;
                changed = true;
            }
        }
    }
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (!productive[i]) throw GrammarError("nonterminal '" + g.symbols_[i] + "' derives no word", raw[i].line);
    }
    return g;
}

bool BistochGrammar::Recognizer::feed(bool heads) {
    if (dead_) return false;
    if (stack_.empty()) {
        dead_ = true;
        return false;
    }
    const auto top = stack_.back();
    stack_.pop_back();
    const auto& prod = grammar_->production(top);
    const auto& alt = heads ? prod.heads : prod.tails;
    if (!alt) {
        dead_ = true;
        return false;
    }
    stack_.insert(stack_.end(), alt->rbegin(), alt->rend());
    return true;
}

bool BistochGrammar::accepts(std::string_view word) const {
    Recognizer rec(*this);
    for (char c : word) {
        if (c != 'H' && c != 'T') return false;
        if (!rec.feed(c == 'H')) return false;
    }
    return rec.complete();
}

template <typename T>
std::vector<T> BistochGrammar::solve_series(T z, std::size_t max_len) const {
    const auto add = [](T a, T b) {
        if constexpr (std::is_integral_v<T>) {
            T out;
            if (__builtin_add_overflow(a, b, &out)) throw std::overflow_error("word count overflow");
            return out;
        } else {
            return a + b;
        }
    };
    const auto mul = [](T a, T b) {
        if constexpr (std::is_integral_v<T>) {
            T out;
            if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("word count overflow");
            return out;
        } else {
            return a * b;
        }
    };

    const std::size_t n_len = max_len + 1;
    std::vector<std::vector<T>> coef(size(), std::vector<T>(n_len, T{0}));

    // prefix[p][m][j]: coefficient j of the product of the first m factors of
    // alternative p. prefix[p][0] is the series 1.
    std::vector<const std::vector<std::size_t>*> alts;
    for (std::size_t i = 0; i < size(); ++i) {
        if (productions_[i].heads) alts.push_back(&*productions_[i].heads);
        if (productions_[i].tails) alts.push_back(&*productions_[i].tails);
    }
    std::vector<std::vector<std::vector<T>>> prefix(alts.size());
    for (std::size_t p = 0; p < alts.size(); ++p) {
        prefix[p].assign(alts[p]->size() + 1, std::vector<T>(n_len, T{0}));
        prefix[p][0][0] = T{1};
    }

    for (std::size_t n = 1; n < n_len; ++n) {
        const std::size_t j = n - 1;
        // Extend every prefix product to index j; factors are known up to j.
        for (std::size_t p = 0; p < alts.size(); ++p) {
            const auto& rhs = *alts[p];
            for (std::size_t m = 1; m <= rhs.size(); ++m) {
                const auto& factor = coef[rhs[m - 1]];
                const auto& prev = prefix[p][m - 1];
                T acc{0};
                for (std::size_t i = 0; i <= j; ++i) {
                    if (factor[i] == T{0} || prev[j - i] == T{0}) continue;
                    acc = add(acc, mul(factor[i], prev[j - i]));
                }
                prefix[p][m][j] = acc;
            }
        }
        std::size_t p = 0;
        for (std::size_t i = 0; i < size(); ++i) {
            T total{0};
            if (productions_[i].heads) total = add(total, prefix[p++].back()[j]);
            if (productions_[i].tails) total = add(total, prefix[p++].back()[j]);
            coef[i][n] = mul(z, total);
        }
    }
    return coef[axiom()];
}

std::vector<std::uint64_t> BistochGrammar::word_counts(std::size_t max_len) const {
    return solve_series<std::uint64_t>(1, max_len);
}

std::vector<double> BistochGrammar::scaled_counts(double z, std::size_t max_len) const {
    return solve_series<double>(z, max_len);
}

std::string BistochGrammar::to_text() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < size(); ++i) {
        out << symbols_[i] << " ->";
        bool first = true;
        const auto emit = [&](const char* letter, const Alternative& alt) {
            if (!alt) return;
            out << (first ? " " : " | ") << letter;
            for (auto s : *alt) out << ' ' << symbols_[s];
            first = false;
        };
        emit("H", productions_[i].heads);
        emit("T", productions_[i].tails);
        out << '\n';
    }
    return out.str();
}

const BistochGrammar& binary_tree_grammar() {
    static const BistochGrammar g = BistochGrammar::parse("D -> H D D | T\n", "binary");
    return g;
}

const BistochGrammar& ternary_tree_grammar() {
    static const BistochGrammar g = BistochGrammar::parse("Y -> H Y Y Y | T\n", "ternary");
    return g;
}

const BistochGrammar& mixed_grammar() {
    static const BistochGrammar g = BistochGrammar::parse("M -> H M B | T\nB -> H | T M\n", "mixed");
    return g;
}

const std::vector<const BistochGrammar*>& shipped_grammars() {
    static const std::vector<const BistochGrammar*> all{&binary_tree_grammar(), &ternary_tree_grammar(),
                                                        &mixed_grammar()};
    return all;
}

const BistochGrammar* find_shipped_grammar(std::string_view name) {
    for (const auto* g : shipped_grammars()) {
        if (g->name() == name) return g;
    }
    return nullptr;
}

}  // namespace buffon
