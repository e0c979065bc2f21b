#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace buffon {

class GrammarError : public std::runtime_error {
public:
    GrammarError(const std::string& what, std::size_t line)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// A binary stochastic context-free grammar: one production
/// X -> H m + T n per nonterminal, terminals {H, T}.
///
/// Recognition is deterministic: the first letter picks the alternative, so
/// the recognizer is a pushdown automaton with no backtracking.
class BistochGrammar {
public:
    /// Right-hand side of one alternative; nullopt means the letter has no
    /// alternative and is rejected.
    using Alternative = std::optional<std::vector<std::size_t>>;

    struct Production {
        Alternative heads;  ///< after H
        Alternative tails;  ///< after T
    };

    /// Text format, one production per line:
    ///
    ///     Y -> H Y Y Y | T      # ternary trees
    ///
    /// Nonterminals are identifiers; the first production's left side is the
    /// axiom. Either alternative may be omitted. Rejects undefined or
    /// duplicate nonterminals and any nonterminal that derives no finite word.
    static BistochGrammar parse(std::string_view text, std::string name = "grammar");

    const std::string& name() const noexcept { return name_; }
    std::size_t size() const noexcept { return productions_.size(); }
    std::size_t axiom() const noexcept { return 0; }
    const std::string& symbol(std::size_t i) const { return symbols_.at(i); }
    const Production& production(std::size_t i) const { return productions_.at(i); }

    /// Whole-word membership in the axiom's language. Letters are 'H'/'T'.
    bool accepts(std::string_view word) const;

    /// Word counts S_0..S_max_len of the axiom's language, from the OGF
    /// system X(z) = z m(z) + z n(z) solved order by order.
    std::vector<std::uint64_t> word_counts(std::size_t max_len) const;

    /// a_n = S_n z^n for n = 0..max_len, computed directly in floating point.
    std::vector<double> scaled_counts(double z, std::size_t max_len) const;

    /// Printable form in the same text format `parse` reads.
    std::string to_text() const;

    friend bool operator==(const BistochGrammar& a, const BistochGrammar& b) {
        return a.symbols_ == b.symbols_ && a.productions_.size() == b.productions_.size() &&
               [&] {
                   for (std::size_t i = 0; i < a.productions_.size(); ++i) {
                       if (a.productions_[i].heads != b.productions_[i].heads ||
                           a.productions_[i].tails != b.productions_[i].tails)
                           return false;
                   }
                   return true;
               }();
    }

    /// Online recognizer: feed letters one at a time.
    class Recognizer {
    public:
        explicit Recognizer(const BistochGrammar& g) : grammar_(&g), stack_{g.axiom()} {}

        /// Consume one letter (true = H). Returns false once the word can no
        /// longer be extended into a member.
        bool feed(bool heads);
        bool dead() const noexcept { return dead_; }
        /// The letters fed so far form a complete member.
        bool complete() const noexcept { return !dead_ && stack_.empty(); }

    private:
        const BistochGrammar* grammar_;
        std::vector<std::size_t> stack_;
        bool dead_ = false;
    };

private:
    template <typename T>
    std::vector<T> solve_series(T z, std::size_t max_len) const;

    std::string name_;
    std::vector<std::string> symbols_;
    std::vector<Production> productions_;
};

/// Shipped grammars.
/// Binary trees (Lukasiewicz code): D -> H D D | T.
const BistochGrammar& binary_tree_grammar();
/// Ternary trees: Y -> H Y Y Y | T.
const BistochGrammar& ternary_tree_grammar();
/// Two nonterminals: M -> H M B | T, B -> H | T M.
const BistochGrammar& mixed_grammar();
const std::vector<const BistochGrammar*>& shipped_grammars();
const BistochGrammar* find_shipped_grammar(std::string_view name);

}  // namespace buffon
