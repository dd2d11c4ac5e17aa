// Snowball English (Porter2) stemmer, implemented directly from the published
// algorithm: regions R1/R2, Y-marking, steps 0-5 plus the two exception lists.
// Suffix tables follow snowball "among" semantics: the longest matching suffix
// is selected first and its condition decides; shorter candidates are never
// retried.

#include "topicnet/stemmer.hpp"

#include <algorithm>
#include <array>
#include <cstddef>

namespace topicnet {
namespace {

bool is_vowel(char c) {
    return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u' || c == 'y';
}

bool ends_with(const std::string& w, std::string_view suf) {
    return w.size() >= suf.size() &&
           w.compare(w.size() - suf.size(), suf.size(), suf) == 0;
}

bool is_double(const std::string& w) {
    if (w.size() < 2) return false;
    char c = w[w.size() - 1];
    if (c != w[w.size() - 2]) return false;
    static constexpr std::string_view doubles = "bdfgmnprt";
    return doubles.find(c) != std::string_view::npos;
}

// Short syllable at the end of w: non-vowel, vowel, non-vowel(!= w,x,Y), or a
// two-letter word of vowel then non-vowel.
bool ends_short_syllable(const std::string& w) {
    auto n = w.size();
    if (n == 2) return is_vowel(w[0]) && !is_vowel(w[1]);
    if (n < 3) return false;
    char c = w[n - 1];
    return !is_vowel(w[n - 3]) && is_vowel(w[n - 2]) && !is_vowel(c) &&
           c != 'w' && c != 'x' && c != 'Y';
}

struct Regions {
    std::size_t p1;
    std::size_t p2;
};

Regions mark_regions(const std::string& w) {
    static constexpr std::array<std::string_view, 3> prefixes = {"gener",
                                                                 "commun",
                                                                 "arsen"};
    std::size_t p1 = w.size();
    for (auto pre : prefixes) {
        if (w.size() >= pre.size() && w.compare(0, pre.size(), pre) == 0) {
            p1 = pre.size();
            break;
        }
    }
    if (p1 == w.size()) {
        std::size_t i = 0;
        while (i < w.size() && !is_vowel(w[i])) ++i;
        while (i < w.size() && is_vowel(w[i])) ++i;
        if (i < w.size()) p1 = i + 1;
    }
    std::size_t p2 = w.size();
    std::size_t i = p1;
    while (i < w.size() && !is_vowel(w[i])) ++i;
    while (i < w.size() && is_vowel(w[i])) ++i;
    if (i < w.size()) p2 = i + 1;
    return {p1, p2};
}

// True if w contains a vowel before position `end`.
bool has_vowel_before(const std::string& w, std::size_t end) {
    for (std::size_t i = 0; i < end && i < w.size(); ++i)
        if (is_vowel(w[i])) return true;
    return false;
}

bool full_word_exception(std::string& w) {
    struct Pair {
        std::string_view from, to;
    };
    static constexpr std::array<Pair, 18> table = {{{"skis", "ski"},
                                                    {"skies", "sky"},
                                                    {"dying", "die"},
                                                    {"lying", "lie"},
                                                    {"tying", "tie"},
                                                    {"idly", "idl"},
                                                    {"gently", "gentl"},
                                                    {"ugly", "ugli"},
                                                    {"early", "earli"},
                                                    {"only", "onli"},
                                                    {"singly", "singl"},
                                                    {"sky", "sky"},
                                                    {"news", "news"},
                                                    {"howe", "howe"},
                                                    {"atlas", "atlas"},
                                                    {"cosmos", "cosmos"},
                                                    {"bias", "bias"},
                                                    {"andes", "andes"}}};
    for (const auto& e : table) {
        if (w == e.from) {
            w = e.to;
            return true;
        }
    }
    return false;
}

bool post_1a_exception(const std::string& w) {
    static constexpr std::array<std::string_view, 8> table = {
        "inning", "outing",  "canning", "herring",
        "earring", "proceed", "exceed",  "succeed"};
    return std::find(table.begin(), table.end(), w) != table.end();
}

void step_1a(std::string& w) {
    if (ends_with(w, "sses")) {
        w.erase(w.size() - 2);
        return;
    }
    if (ends_with(w, "ied") || ends_with(w, "ies")) {
        // Replace by "i" when more than one letter precedes the suffix.
        if (w.size() > 4)
            w.erase(w.size() - 2);
        else
            w.erase(w.size() - 1);
        return;
    }
    if (ends_with(w, "us") || ends_with(w, "ss")) return;
    if (ends_with(w, "s")) {
        // Delete if a vowel occurs before the letter preceding the final s.
        if (w.size() >= 3 && has_vowel_before(w, w.size() - 2))
            w.erase(w.size() - 1);
    }
}

void step_1b(std::string& w, const Regions& r) {
    std::string_view suf;
    if (ends_with(w, "eedly"))
        suf = "eedly";
    else if (ends_with(w, "ingly"))
        suf = "ingly";
    else if (ends_with(w, "edly"))
        suf = "edly";
    else if (ends_with(w, "eed"))
        suf = "eed";
    else if (ends_with(w, "ing"))
        suf = "ing";
    else if (ends_with(w, "ed"))
        suf = "ed";
    else
        return;

    if (suf == "eed" || suf == "eedly") {
        if (w.size() - suf.size() >= r.p1) w.erase(w.size() - (suf.size() - 2));
        return;
    }
    if (!has_vowel_before(w, w.size() - suf.size())) return;
    w.erase(w.size() - suf.size());
    if (ends_with(w, "at") || ends_with(w, "bl") || ends_with(w, "iz")) {
        w += 'e';
    } else if (is_double(w)) {
        w.erase(w.size() - 1);
    } else if (r.p1 >= w.size() && ends_short_syllable(w)) {
        w += 'e';
    }
}

void step_1c(std::string& w) {
    auto n = w.size();
    if (n < 3) return;
    char last = w[n - 1];
    if ((last == 'y' || last == 'Y') && !is_vowel(w[n - 2])) w[n - 1] = 'i';
}

struct Rule {
    std::string_view suffix;
    std::string_view replacement;
};

// Longest matching suffix wins; returns the matched rule or nullptr.
template <std::size_t N>
const Rule* longest_match(const std::string& w, const std::array<Rule, N>& rules) {
    const Rule* best = nullptr;
    for (const auto& rule : rules) {
        if (!ends_with(w, rule.suffix)) continue;
        if (!best || rule.suffix.size() > best->suffix.size()) best = &rule;
    }
    return best;
}

void step_2(std::string& w, const Regions& r) {
    static constexpr std::array<Rule, 24> rules = {{{"ization", "ize"},
                                                    {"ational", "ate"},
                                                    {"ousness", "ous"},
                                                    {"iveness", "ive"},
                                                    {"fulness", "ful"},
                                                    {"tional", "tion"},
                                                    {"lessli", "less"},
                                                    {"biliti", "ble"},
                                                    {"ation", "ate"},
                                                    {"alism", "al"},
                                                    {"aliti", "al"},
                                                    {"ousli", "ous"},
                                                    {"iviti", "ive"},
                                                    {"fulli", "ful"},
                                                    {"enci", "ence"},
                                                    {"anci", "ance"},
                                                    {"abli", "able"},
                                                    {"izer", "ize"},
                                                    {"ator", "ate"},
                                                    {"alli", "al"},
                                                    {"entli", "ent"},
                                                    {"ogi", "og"},
                                                    {"bli", "ble"},
                                                    {"li", ""}}};
    const Rule* rule = longest_match(w, rules);
    if (!rule) return;
    std::size_t start = w.size() - rule->suffix.size();
    if (start < r.p1) return;
    if (rule->suffix == "ogi") {
        if (start == 0 || w[start - 1] != 'l') return;
    } else if (rule->suffix == "li") {
        static constexpr std::string_view li_ending = "cdeghkmnrt";
        if (start == 0 || li_ending.find(w[start - 1]) == std::string_view::npos)
            return;
    }
    w.replace(start, rule->suffix.size(), rule->replacement);
}

void step_3(std::string& w, const Regions& r) {
    static constexpr std::array<Rule, 9> rules = {{{"ational", "ate"},
                                                   {"tional", "tion"},
                                                   {"alize", "al"},
                                                   {"icate", "ic"},
                                                   {"iciti", "ic"},
                                                   {"ative", ""},
                                                   {"ical", "ic"},
                                                   {"ness", ""},
                                                   {"ful", ""}}};
    const Rule* rule = longest_match(w, rules);
    if (!rule) return;
    std::size_t start = w.size() - rule->suffix.size();
    if (start < r.p1) return;
    if (rule->suffix == "ative" && start < r.p2) return;
    w.replace(start, rule->suffix.size(), rule->replacement);
}

void step_4(std::string& w, const Regions& r) {
    static constexpr std::array<Rule, 18> rules = {{{"ement", ""},
                                                    {"ance", ""},
                                                    {"ence", ""},
                                                    {"able", ""},
                                                    {"ible", ""},
                                                    {"ment", ""},
                                                    {"ent", ""},
                                                    {"ant", ""},
                                                    {"ism", ""},
                                                    {"ate", ""},
                                                    {"iti", ""},
                                                    {"ous", ""},
                                                    {"ive", ""},
                                                    {"ize", ""},
                                                    {"ion", ""},
                                                    {"al", ""},
                                                    {"er", ""},
                                                    {"ic", ""}}};
    const Rule* rule = longest_match(w, rules);
    if (!rule) return;
    std::size_t start = w.size() - rule->suffix.size();
    if (start < r.p2) return;
    if (rule->suffix == "ion") {
        if (start == 0 || (w[start - 1] != 's' && w[start - 1] != 't')) return;
    }
    w.erase(start);
}

void step_5(std::string& w, const Regions& r) {
    auto n = w.size();
    if (n == 0) return;
    if (w[n - 1] == 'e') {
        std::string head = w.substr(0, n - 1);
        if (n - 1 >= r.p2 || (n - 1 >= r.p1 && !ends_short_syllable(head)))
            w.erase(n - 1);
        return;
    }
    if (w[n - 1] == 'l' && n - 1 >= r.p2 && n >= 2 && w[n - 2] == 'l')
        w.erase(n - 1);
}

}  // namespace

std::string stem(std::string_view token) {
    std::string w(token);
    if (full_word_exception(w)) return w;
    if (w.size() <= 2) return w;

    // Mark y as consonant: at word start or after a vowel.
    if (w[0] == 'y') w[0] = 'Y';
    for (std::size_t i = 1; i < w.size(); ++i)
        if (w[i] == 'y' && is_vowel(w[i - 1])) w[i] = 'Y';

    Regions r = mark_regions(w);

    step_1a(w);
    if (!post_1a_exception(w)) {
        step_1b(w, r);
        step_1c(w);
        step_2(w, r);
        step_3(w, r);
        step_4(w, r);
        step_5(w, r);
    }
    std::replace(w.begin(), w.end(), 'Y', 'y');
    return w;
}

}  // namespace topicnet
