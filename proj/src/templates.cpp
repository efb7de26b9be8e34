#include "pref/templates.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "pref/errors.hpp"

namespace pref {

namespace {

constexpr const char* kCoverage = R"(You are given a question. Produce a comprehensive evaluation guideline: enumerate every factor a high-quality answer to this question must satisfy (factuality, coherence, completeness, clarity, and any question-specific criteria). Ignore user-specific preferences entirely; the guideline must reflect general answer quality only.

Question:
{question}

Reply with a fenced JSON block containing an array of factors, ordered from most to least important for a general audience. Each factor is an object: {"name": short phrase, "description": one to three sentences, "rubric": optional short check}.
)";

constexpr const char* kPreference = R"(A general evaluation guideline for the question below is given as a numbered list of factors, each with a stable id. Re-rank the factors so the ones this user cares about most come first. {augmentation_policy}

Question:
{question}

User preference:
{preference}

General guideline:
{guideline}

Reply with a fenced JSON block: {"ordering": [factor ids, best first], "added": [{"id": "A1", "name": short phrase, "description": one to three sentences, "justification": why this user needs this factor}], "weights": optional map from factor id to a non-negative importance}. The ordering must contain every given factor id exactly once, plus the id of every added factor exactly once.
)";

constexpr const char* kScoring = R"(Rate the candidate answer on a 0-10 scale against the personalized guideline below. Factors are listed most important first; respect explicit weights when given. Alignment with the user's preference must never excuse factual errors.

Question:
{question}

User preference:
{preference}

Personalized guideline:
{guideline}

Candidate answer:
{answer}

Reply with a fenced JSON block: {"score": number in [0, 10], "sub_scores": optional map from factor id to a number in [0, 10], "rationale": optional short text}.
)";

constexpr const char* kScoringGeneral = R"(Rate the candidate answer on a 0-10 scale against the general guideline below. Factors are listed most important first. The answer must be factually correct, complete, and clear.

Question:
{question}

General guideline:
{guideline}

Candidate answer:
{answer}

Reply with a fenced JSON block: {"score": number in [0, 10], "sub_scores": optional map from factor id to a number in [0, 10], "rationale": optional short text}.
)";

constexpr const char* kZeroShot = R"(Score each candidate answer to the question on a 0-10 scale for overall quality.

Question:
{question}

Candidate answers:
{candidates}

Reply with a fenced JSON block: {"scores": [one number in [0, 10] per candidate, in the order shown]}.
)";

constexpr const char* kReminder = R"(When scoring, consider the user's stated preference.

User preference:
{preference}

Question:
{question}

Candidate answers:
{candidates}

Score each candidate answer on a 0-10 scale. Reply with a fenced JSON block: {"scores": [one number in [0, 10] per candidate, in the order shown]}.
)";

bool is_slot_char(char c) { return (c >= 'a' && c <= 'z') || c == '_'; }

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw TemplateError("cannot open template file: " + path.string());
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

}  // namespace

const std::vector<std::string>& known_slots() {
    static const std::vector<std::string> slots = {
        "question", "preference", "guideline", "answer", "candidates", "augmentation_policy"};
    return slots;
}

std::string render_template(const std::string& tmpl,
                            const std::map<std::string, std::string>& slots) {
    const auto& vocabulary = known_slots();
    std::string out;
    out.reserve(tmpl.size());
    std::vector<std::string> missing;

    std::size_t i = 0;
    while (i < tmpl.size()) {
        if (tmpl[i] != '{') {
            out += tmpl[i++];
            continue;
        }
        std::size_t j = i + 1;
        while (j < tmpl.size() && is_slot_char(tmpl[j])) ++j;
        if (j < tmpl.size() && tmpl[j] == '}' && j > i + 1) {
            const std::string name = tmpl.substr(i + 1, j - i - 1);
            if (std::find(vocabulary.begin(), vocabulary.end(), name) != vocabulary.end()) {
                auto it = slots.find(name);
                if (it == slots.end()) {
                    missing.push_back(name);
                } else {
                    out += it->second;
                }
                i = j + 1;
                continue;
            }
        }
        out += tmpl[i++];
    }

    if (!missing.empty()) {
        std::string names;
        for (const auto& m : missing) {
            if (!names.empty()) names += ", ";
            names += m;
        }
        throw TemplateError("unfilled template slot(s): " + names);
    }
    return out;
}

PromptTemplateSet builtin_templates() {
    PromptTemplateSet set;
    set.coverage_template = kCoverage;
    set.preference_template = kPreference;
    set.scoring_template = kScoring;
    set.scoring_general_template = kScoringGeneral;
    set.zero_shot_template = kZeroShot;
    set.reminder_template = kReminder;
    set.version = "v1";
    return set;
}

PromptTemplateSet load_templates(const std::filesystem::path& dir) {
    PromptTemplateSet set;
    set.coverage_template = read_file(dir / "coverage.txt");
    set.preference_template = read_file(dir / "preference.txt");
    set.scoring_template = read_file(dir / "scoring.txt");
    set.scoring_general_template = read_file(dir / "scoring_general.txt");
    set.zero_shot_template = read_file(dir / "zero_shot.txt");
    set.reminder_template = read_file(dir / "reminder.txt");
    set.version = dir.filename().string();
    const auto version_file = dir / "VERSION";
    if (std::filesystem::exists(version_file)) {
        std::string v = read_file(version_file);
        while (!v.empty() && (v.back() == '\n' || v.back() == '\r')) v.pop_back();
        if (!v.empty()) set.version = v;
    }
    return set;
}

std::string render_guideline_block(const std::vector<Factor>& factors,
                                   const std::map<std::string, double>* weights) {
    std::ostringstream out;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        const auto& f = factors[i];
        out << (i + 1) << ". [" << f.id << "] " << f.name;
        if (weights != nullptr) {
            auto it = weights->find(f.id);
            if (it != weights->end()) {
                char buf[32];
                std::snprintf(buf, sizeof(buf), "%g", it->second);
                out << " (weight " << buf << ")";
            }
        }
        if (!f.description.empty()) out << ": " << f.description;
        if (f.rubric.has_value() && !f.rubric->empty()) out << " Check: " << *f.rubric;
        out << "\n";
    }
    return out.str();
}

std::string render_candidates_block(const std::vector<CandidateAnswer>& candidates) {
    std::ostringstream out;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        out << (i + 1) << ". " << candidates[i].text << "\n";
    }
    return out.str();
}

}  // namespace pref
