#include "olac/validation.hpp"

#include <algorithm>
#include <sstream>
#include <thread>

#include "olac/datestamp.hpp"
#include "olac/text.hpp"

namespace olac {

namespace {

bool placement_ok(std::string_view vocab, ElementName name) {
    if (vocab == kRoleVocabulary) return name == ElementName::Creator || name == ElementName::Contributor;
    if (vocab == kLinguisticTypeVocabulary || vocab == kDiscourseTypeVocabulary) return name == ElementName::Type;
    if (vocab == kLinguisticFieldVocabulary) return name == ElementName::Subject;
    if (vocab == kLanguageVocabulary) return name == ElementName::Language || name == ElementName::Subject;
    return true;
}

void check_element(const MetadataElement& e, const Profile& profile, Location loc, std::vector<Diagnostic>& out) {
    const std::string where = std::string(to_string(e.name));
    const auto& q = e.qualifier;

    if (e.refinement && q && q->is_vocabulary())
        out.push_back(Diagnostic::make(Rule::RefinementWithVocabulary, loc,
                                       "dcterms:" + e.refinement->name + " also typed olac:" + q->id));

    if (q && q->is_vocabulary()) {
        const std::string code = e.code.value_or("");
        if (q->id == kLanguageVocabulary) {
            auto lc = try_parse_language_code(code);
            if (!lc) {
                out.push_back(Diagnostic::make(Rule::LanguageCodeMalformed, loc,
                                               where + " language code '" + code + "' is malformed"));
            } else if (!profile.languages.contains(*lc)) {
                out.push_back(Diagnostic::make(Rule::LanguageCodeUnknown, loc,
                                               where + " language code '" + code + "' is not in the language table"));
            }
        } else if (const Vocabulary* vocab = profile.vocabularies.find(q->id)) {
            if (!vocab->find(code)) {
                bool accepted = vocab->status() == VocabStatus::Accepted;
                out.push_back(Diagnostic::make(accepted ? Rule::VocabularyTerm : Rule::ThirdPartyTerm, loc,
                                               "'" + code + "' is not a term of " + q->id));
            }
        } else {
            out.push_back(Diagnostic::make(Rule::UnknownVocabulary, loc, "olac:" + q->id + " is not a registered vocabulary"));
        }
        if (!placement_ok(q->id, e.name))
            out.push_back(Diagnostic::make(Rule::VocabularyPlacement, loc,
                                           "olac:" + q->id + " does not apply to " + where));
    }

    if (q && !q->is_vocabulary() && q->id == kW3cDtfScheme) {
        auto value = e.content ? text::trim(*e.content) : std::string_view{};
        if (!validate_w3cdtf(value))
            out.push_back(Diagnostic::make(Rule::W3cDtf, loc, "'" + std::string(value) + "' is not a W3C-DTF date"));
    }

    if (e.code && !q)
        out.push_back(Diagnostic::make(Rule::CodeWithoutType, loc, where + " has code '" + *e.code + "' but no type"));
}

}  // namespace

std::string_view to_string(Verdict verdict) {
    switch (verdict) {
        case Verdict::Conformant: return "conformant";
        case Verdict::ConformantWithWarnings: return "conformant-with-warnings";
        case Verdict::Nonconformant: return "nonconformant";
    }
    return "";
}

std::size_t ConformanceReport::errors() const {
    return static_cast<std::size_t>(std::count_if(diagnostics.begin(), diagnostics.end(),
                                                  [](const Diagnostic& d) { return d.severity == Severity::Error; }));
}

std::size_t ConformanceReport::warnings() const { return diagnostics.size() - errors(); }

Verdict verdict_for(const std::vector<Diagnostic>& diagnostics) {
    bool warning = false;
    for (const auto& d : diagnostics) {
        if (d.severity == Severity::Error) return Verdict::Nonconformant;
        warning = true;
    }
    return warning ? Verdict::ConformantWithWarnings : Verdict::Conformant;
}

ConformanceReport validate(const OlacRecord& record, const Profile& profile, std::string context,
                           std::span<const SourcePosition> positions) {
    ConformanceReport report;
    report.context = std::move(context);
    const auto& elements = record.elements();
    for (std::size_t i = 0; i < elements.size(); ++i) {
        Location loc{0, 0, static_cast<long>(i)};
        if (i < positions.size()) {
            loc.line = positions[i].line;
            loc.column = positions[i].column;
        }
        check_element(elements[i], profile, loc, report.diagnostics);
    }
    report.verdict = verdict_for(report.diagnostics);
    return report;
}

ConformanceReport validate(const ParsedRecord& parsed, const Profile& profile, std::string context) {
    auto report = validate(parsed.record, profile, std::move(context), parsed.positions);
    report.diagnostics.insert(report.diagnostics.begin(), parsed.diagnostics.begin(), parsed.diagnostics.end());
    report.verdict = verdict_for(report.diagnostics);
    return report;
}

void BatchSummary::add(const ConformanceReport& report) {
    ++records;
    switch (report.verdict) {
        case Verdict::Conformant: ++conformant; break;
        case Verdict::ConformantWithWarnings: ++with_warnings; break;
        case Verdict::Nonconformant: ++nonconformant; break;
    }
    for (const auto& d : report.diagnostics) {
        (d.severity == Severity::Error ? errors : warnings) += 1;
        ++per_rule[d.rule];
    }
}

void BatchSummary::merge(const BatchSummary& other) {
    records += other.records;
    conformant += other.conformant;
    with_warnings += other.with_warnings;
    nonconformant += other.nonconformant;
    errors += other.errors;
    warnings += other.warnings;
    for (const auto& [rule, n] : other.per_rule) per_rule[rule] += n;
}

BatchSummary validate_batch(std::span<const OlacRecord> records, const Profile& profile, unsigned threads) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(1, records.size() / 64)));
    std::vector<BatchSummary> parts(threads);
    std::vector<std::thread> workers;
    const std::size_t chunk = (records.size() + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
        workers.emplace_back([&, t] {
            auto begin = std::min(records.size(), t * chunk);
            auto end = std::min(records.size(), begin + chunk);
            for (auto i = begin; i < end; ++i) parts[t].add(validate(records[i], profile));
        });
    }
    for (auto& w : workers) w.join();
    BatchSummary total;
    for (const auto& p : parts) total.merge(p);
    return total;
}

std::string format_text(const ConformanceReport& report) {
    std::ostringstream os;
    os << (report.context.empty() ? "record" : report.context) << ": " << to_string(report.verdict);
    if (!report.diagnostics.empty()) os << " (" << report.errors() << " errors, " << report.warnings() << " warnings)";
    os << '\n';
    for (const auto& d : report.diagnostics)
        os << "  " << d.location.to_string() << " " << to_string(d.severity) << " [" << to_string(d.rule) << "] "
           << d.message << '\n';
    return os.str();
}

std::string format_tsv(const ConformanceReport& report) {
    std::string out;
    for (const auto& d : report.diagnostics) {
        out += d.to_tsv();
        out += '\n';
    }
    return out;
}

std::string format_text(const BatchSummary& s) {
    std::ostringstream os;
    os << "records: " << s.records << "\nconformant: " << s.conformant
       << "\nconformant-with-warnings: " << s.with_warnings << "\nnonconformant: " << s.nonconformant
       << "\nerrors: " << s.errors << "\nwarnings: " << s.warnings << '\n';
    for (const auto& [rule, n] : s.per_rule) os << "  " << to_string(rule) << ": " << n << '\n';
    return os.str();
}

}  // namespace olac
