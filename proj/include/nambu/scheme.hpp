#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <string>
#include <vector>

#include "nambu/errors.hpp"
#include "nambu/rational.hpp"

namespace nambu {

// One stage of a splitting composition: exp(fraction * h * X_generator).
// Generators are numbered 1..3 (X1, X2, X3); the planar Verlet baselines map
// T -> 1 and V -> 2.
struct Stage {
    int generator = 0;
    Rational fraction;

    friend bool operator==(const Stage&, const Stage&) = default;
};

class SplitScheme {
  public:
    static const std::array<const char*, 6>& nambu_labels() {
        static const std::array<const char*, 6> labels = {"12321", "13231", "31213",
                                                          "21312", "23132", "32123"};
        return labels;
    }
    static const std::array<const char*, 8>& all_labels() {
        static const std::array<const char*, 8> labels = {"12321", "13231", "31213", "21312",
                                                          "23132", "32123", "TVT",   "VTV"};
        return labels;
    }

    static bool is_nambu_label(const std::string& label) {
        const auto& ls = nambu_labels();
        return std::find_if(ls.begin(), ls.end(),
                            [&](const char* l) { return label == l; }) != ls.end();
    }

    // Builds one of the eight built-in palindromic compositions. Digit labels
    // list the stage generators left to right; each occurrence of a generator
    // carries fraction 1/(number of occurrences), so fractions sum to one.
    static SplitScheme from_label(const std::string& label) {
        std::string digits;
        if (label == "TVT")
            digits = "121";
        else if (label == "VTV")
            digits = "212";
        else {
            const auto& ls = nambu_labels();
            if (std::find_if(ls.begin(), ls.end(), [&](const char* l) { return label == l; }) ==
                ls.end())
                throw UnknownScheme("unknown scheme label '" + label + "'");
            digits = label;
        }

        std::map<int, int> counts;
        for (char c : digits) counts[c - '0'] += 1;
        SplitScheme s;
        s.label_ = label;
        for (char c : digits) {
            int g = c - '0';
            s.stages_.push_back(Stage{g, Rational(1, counts[g])});
        }
        return s;
    }

    // Arbitrary stage list; fractions for each generator must sum to one.
    static SplitScheme custom(std::string label, std::vector<Stage> stages) {
        if (stages.empty()) throw DomainError("SplitScheme: empty stage list");
        std::map<int, Rational> sums;
        for (const Stage& st : stages) {
            if (st.generator < 1 || st.generator > 3)
                throw DomainError("SplitScheme: generator index out of range");
            sums[st.generator] += st.fraction;
        }
        for (const auto& [g, total] : sums)
            if (total != 1)
                throw DomainError("SplitScheme: fractions of generator " + std::to_string(g) +
                                  " sum to " + to_string(total) + ", expected 1");
        SplitScheme s;
        s.label_ = std::move(label);
        s.stages_ = std::move(stages);
        return s;
    }

    const std::string& label() const { return label_; }
    const std::vector<Stage>& stages() const { return stages_; }

    bool palindromic() const {
        auto rev = stages_;
        std::reverse(rev.begin(), rev.end());
        return rev == stages_;
    }

    // Generators actually used (sorted, unique).
    std::vector<int> generators_used() const {
        std::vector<int> gs;
        for (const auto& st : stages_)
            if (std::find(gs.begin(), gs.end(), st.generator) == gs.end())
                gs.push_back(st.generator);
        std::sort(gs.begin(), gs.end());
        return gs;
    }

  private:
    std::string label_;
    std::vector<Stage> stages_;
};

}  // namespace nambu
