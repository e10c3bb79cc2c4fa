#include "search_oracle.hpp"

#include <algorithm>
#include <set>

#include "olac/crosswalk.hpp"
#include "olac/text.hpp"

namespace olac::testing {

using catalog::CatalogEntry;
using catalog::EntryKey;
using catalog::Snapshot;
using search::Query;
using search::ResultSet;

namespace {

bool given(const std::optional<std::string>& v) { return v && !text::is_blank(*v); }

bool is_vocab(const MetadataElement& e, std::string_view id) {
    return e.qualifier && e.qualifier->is_vocabulary(id) && e.code;
}

// Canonical code of a vocabulary value: the term's code when the input is a
// code or label of a term, otherwise the trimmed input.
std::string canonical(std::string_view vocab, std::string_view input, const Profile& profile) {
    std::string s(text::trim(input));
    const Vocabulary* v = profile.vocabularies.find(vocab);
    if (!v) return s;
    for (const auto& t : v->terms())
        if (term_key(t.code) == term_key(s)) return t.code;
    for (const auto& t : v->terms())
        if (term_key(t.label) == term_key(s)) return t.code;
    return s;
}

std::string class_of(const std::string& code, const Profile& profile) {
    auto lc = try_parse_language_code(code);
    return lc ? profile.equivalences.class_key(*lc) : std::string();
}

// Class keys a language criterion stands for.
std::set<std::string> language_classes(const std::string& input, const Profile& profile) {
    const std::string s(text::trim(input));
    auto lc = try_parse_language_code(s);
    if (lc) {
        std::string cls = profile.equivalences.class_key(*lc);
        if (profile.languages.contains(*lc) || profile.equivalences.members(cls).size() > 1) return {cls};
    }
    std::set<std::string> out;
    const std::string wanted = text::normalize_name(s);
    for (const auto& [name, code] : profile.aliases.entries())
        if (text::normalize_name(name) == wanted) out.insert(profile.equivalences.class_key(code));
    if (out.empty() && lc) out.insert(profile.equivalences.class_key(*lc));
    return out;
}

std::string dc_type_value(const std::string& s) { return text::fold_case(text::collapse_whitespace(s)); }

// Distinct facet values of one entry.
std::map<search::Facet, std::set<std::string>> facets_of(const EntryKey& key, const OlacRecord& r,
                                                         const Profile& profile) {
    using search::Facet;
    std::map<Facet, std::set<std::string>> out;
    out[Facet::Archive].insert(key.archive);
    for (const auto& e : r.elements()) {
        if (is_vocab(e, kLanguageVocabulary)) {
            std::string cls = class_of(*e.code, profile);
            if (cls.empty()) continue;
            if (e.name == ElementName::Subject) out[Facet::SubjectLanguage].insert(cls);
            if (e.name == ElementName::Language) out[Facet::Language].insert(cls);
        }
        if (is_vocab(e, kLinguisticTypeVocabulary))
            out[Facet::LinguisticType].insert(canonical(kLinguisticTypeVocabulary, *e.code, profile));
        if (is_vocab(e, kDiscourseTypeVocabulary))
            out[Facet::DiscourseType].insert(canonical(kDiscourseTypeVocabulary, *e.code, profile));
        if (is_vocab(e, kLinguisticFieldVocabulary))
            out[Facet::LinguisticField].insert(canonical(kLinguisticFieldVocabulary, *e.code, profile));
        if (is_vocab(e, kRoleVocabulary)) out[Facet::Role].insert(canonical(kRoleVocabulary, *e.code, profile));
        if (e.name == ElementName::Type && !(e.qualifier && e.qualifier->is_vocabulary()) && e.content &&
            !text::is_blank(*e.content))
            out[Facet::DcType].insert(dc_type_value(*e.content));
    }
    for (auto it = out.begin(); it != out.end();) it = it->second.empty() ? out.erase(it) : std::next(it);
    return out;
}

std::string facet_label(search::Facet f, const std::string& value, const Profile& profile) {
    using search::Facet;
    if (f == Facet::Language || f == Facet::SubjectLanguage) return profile.language_class_label(value);
    std::string_view vocab;
    if (f == Facet::LinguisticType) vocab = kLinguisticTypeVocabulary;
    if (f == Facet::DiscourseType) vocab = kDiscourseTypeVocabulary;
    if (f == Facet::LinguisticField) vocab = kLinguisticFieldVocabulary;
    if (f == Facet::Role) vocab = kRoleVocabulary;
    if (!vocab.empty())
        if (const Vocabulary* v = profile.vocabularies.find(vocab))
            if (const VocabTerm* t = v->find(value)) return t->label;
    return value;
}

// Number of matching elements (or tokens) for one criterion; 0 = no match.
using Criterion = std::function<std::size_t(const EntryKey&, const OlacRecord&)>;

std::vector<Criterion> criteria_of(const Query& q, const Profile& profile) {
    std::vector<Criterion> out;
    if (given(q.text)) {
        std::set<std::string> toks;
        for (auto& t : text::tokenize(*q.text)) toks.insert(t);
        for (const auto& t : toks)
            out.push_back([t](const EntryKey&, const OlacRecord& r) {
                std::size_t n = 0;
                for (const auto& e : r.elements())
                    if (e.content)
                        for (const auto& tok : text::tokenize(*e.content)) n += tok == t;
                return n;
            });
    }
    for (auto [value, name] : {std::pair{&q.subject_language, ElementName::Subject},
                               std::pair{&q.language, ElementName::Language}}) {
        if (!given(*value)) continue;
        auto classes = language_classes(**value, profile);
        out.push_back([classes, name, &profile](const EntryKey&, const OlacRecord& r) {
            std::size_t n = 0;
            for (const auto& e : r.elements())
                if (e.name == name && is_vocab(e, kLanguageVocabulary)) n += classes.count(class_of(*e.code, profile));
            return n;
        });
    }
    for (auto [value, vocab] : {std::pair{&q.linguistic_type, kLinguisticTypeVocabulary},
                                std::pair{&q.discourse_type, kDiscourseTypeVocabulary},
                                std::pair{&q.linguistic_field, kLinguisticFieldVocabulary}}) {
        if (!given(*value)) continue;
        std::string want = canonical(vocab, **value, profile);
        out.push_back([want, vocab, &profile](const EntryKey&, const OlacRecord& r) {
            std::size_t n = 0;
            for (const auto& e : r.elements())
                if (is_vocab(e, vocab)) n += canonical(vocab, *e.code, profile) == want;
            return n;
        });
    }
    if (given(q.role) || given(q.name)) {
        std::optional<std::string> role, name;
        if (given(q.role)) role = canonical(kRoleVocabulary, *q.role, profile);
        if (given(q.name)) name = text::normalize_name(*q.name);
        out.push_back([role, name, &profile](const EntryKey&, const OlacRecord& r) {
            std::size_t n = 0;
            for (const auto& e : r.elements()) {
                if (!name) {
                    // role alone matches any element typed with the role vocabulary
                    n += is_vocab(e, kRoleVocabulary) && canonical(kRoleVocabulary, *e.code, profile) == *role;
                    continue;
                }
                if (e.name != ElementName::Creator && e.name != ElementName::Contributor) continue;
                if (!e.content || text::normalize_name(*e.content) != *name || name->empty()) continue;
                if (role && !(is_vocab(e, kRoleVocabulary) && canonical(kRoleVocabulary, *e.code, profile) == *role))
                    continue;
                ++n;
            }
            return n;
        });
    }
    if (given(q.archive)) {
        std::string a(text::trim(*q.archive));
        out.push_back([a](const EntryKey& k, const OlacRecord&) -> std::size_t { return k.archive == a; });
    }
    if (given(q.dc_type)) {
        std::string want = dc_type_value(*q.dc_type);
        out.push_back([want](const EntryKey&, const OlacRecord& r) {
            std::size_t n = 0;
            for (const auto& e : r.elements())
                if (e.name == ElementName::Type && !(e.qualifier && e.qualifier->is_vocabulary()) && e.content &&
                    !text::is_blank(*e.content))
                    n += dc_type_value(*e.content) == want;
            return n;
        });
    }
    return out;
}

const std::vector<std::string> kNoiseWords = {"zzyzx", "Mango", "English", "en", "x-sil-QQQ", "FRUIT", "the"};

}  // namespace

Snapshot random_snapshot(Rng& rng, std::size_t n, std::size_t archives, const Profile& profile) {
    Snapshot s;
    s.id = 1 + rng.below(1000);
    for (std::size_t i = 0; i < n + n / 20; ++i) {
        auto e = std::make_shared<CatalogEntry>();
        e->key = {"arch" + std::to_string(rng.below(archives)), "oai:r:" + std::to_string(i)};
        e->header = {e->key.id, Datestamp::from_ymd(2002, 1, 1), i >= n};
        if (i < n) e->record = std::make_shared<const OlacRecord>(random_record(rng, profile));
        e->first_seen = e->last_updated = Datestamp::from_ymd(2002, 1, 2);
        auto& stats = s.per_archive[e->key.archive];
        (e->deleted() ? stats.deleted : stats.live) += 1;
        s.entries.emplace(e->key, std::move(e));
    }
    return s;
}

Query random_query(Rng& rng, const Snapshot& snapshot, const Profile& profile) {
    std::vector<const CatalogEntry*> live;
    for (const auto& [k, e] : snapshot.entries)
        if (!e->deleted()) live.push_back(e.get());
    const CatalogEntry& src = *live[rng.below(live.size())];
    const auto& els = src.record->elements();
    auto pick_el = [&](auto pred) -> const MetadataElement* {
        std::vector<const MetadataElement*> c;
        for (const auto& e : els)
            if (pred(e)) c.push_back(&e);
        return c.empty() ? nullptr : c[rng.below(c.size())];
    };

    Query q;
    while (q.empty()) {
        if (rng.chance(0.5)) {
            std::string t;
            for (int i = rng.between(1, 2); i > 0; --i) {
                const MetadataElement* e = pick_el([](const MetadataElement& e) { return e.content.has_value(); });
                auto toks = e ? text::tokenize(*e->content) : std::vector<std::string>{};
                t += (t.empty() ? "" : " ") + (toks.empty() || rng.chance(0.1) ? rng.pick(kNoiseWords) : rng.pick(toks));
            }
            q.text = t;
        }
        if (rng.chance(0.3)) {
            if (auto* e = pick_el([](const MetadataElement& e) {
                    return e.name == ElementName::Subject && is_vocab(e, kLanguageVocabulary);
                })) {
                auto lc = try_parse_language_code(*e->code);
                const std::string* name = lc ? profile.languages.name_of(*lc) : nullptr;
                q.subject_language = name && rng.chance(0.5) ? *name : *e->code;
            } else {
                q.subject_language = rng.pick(kNoiseWords);
            }
        }
        if (rng.chance(0.25)) {
            if (auto* e = pick_el([](const MetadataElement& e) {
                    return e.name == ElementName::Language && is_vocab(e, kLanguageVocabulary);
                }))
                q.language = *e->code;
        }
        for (auto [field, vocab] : {std::pair{&q.linguistic_type, kLinguisticTypeVocabulary},
                                    std::pair{&q.discourse_type, kDiscourseTypeVocabulary},
                                    std::pair{&q.linguistic_field, kLinguisticFieldVocabulary}}) {
            if (!rng.chance(0.2)) continue;
            const auto& terms = profile.vocabularies.find(vocab)->terms();
            const VocabTerm& t = rng.pick(terms);
            *field = rng.chance(0.5) ? t.code : t.label;
        }
        if (rng.chance(0.2)) {
            if (auto* e = pick_el([](const MetadataElement& e) {
                    return e.name == ElementName::Creator || e.name == ElementName::Contributor;
                })) {
                if (rng.chance(0.7)) q.name = *e->content;
                if (is_vocab(*e, kRoleVocabulary) && rng.chance(0.6)) q.role = *e->code;
            }
        }
        if (rng.chance(0.15)) q.archive = rng.chance(0.8) ? src.key.archive : "nowhere";
        if (rng.chance(0.15)) {
            if (auto* e = pick_el([](const MetadataElement& e) {
                    return e.name == ElementName::Type && !e.qualifier && e.content;
                }))
                q.dc_type = rng.chance(0.5) ? text::fold_case(*e->content) : *e->content;
        }
    }
    return q;
}

ResultSet oracle_search(const Snapshot& snapshot, const Query& query, const Profile& profile) {
    auto criteria = criteria_of(query, profile);
    struct Hit {
        EntryKey key;
        const OlacRecord* record;
        std::size_t score;
    };
    std::vector<Hit> hits;
    for (const auto& [key, e] : snapshot.entries) {
        if (e->deleted()) continue;
        std::size_t score = 0;
        bool all = true;
        for (const auto& c : criteria) {
            std::size_t n = c(key, *e->record);
            if (n == 0) {
                all = false;
                break;
            }
            score += n;
        }
        if (all) hits.push_back({key, e->record.get(), score});
    }
    std::sort(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) {
        return a.score != b.score ? a.score > b.score : a.key < b.key;
    });

    ResultSet out;
    out.snapshot = snapshot.id;
    out.total = hits.size();
    std::map<search::Facet, std::map<std::string, std::size_t>> counts;
    for (const auto& h : hits) {
        const OlacRecord& r = *h.record;
        search::ResultItem item;
        item.key = h.key;
        item.score = h.score;
        for (const auto& e : r.elements()) {
            if (e.name == ElementName::Title && e.content && item.title.empty()) item.title = text::collapse_whitespace(*e.content);
        }
        if (const auto* l = r.first(ElementName::Language)) item.language = render_value(*l, profile);
        if (const auto* t = r.first(ElementName::Type)) item.type = render_value(*t, profile);
        if (const auto* d = r.first(ElementName::Description); d && d->content)
            item.snippet = text::utf8_prefix(text::collapse_whitespace(*d->content), 200);
        out.items.push_back(std::move(item));
        for (const auto& [f, values] : facets_of(h.key, r, profile))
            for (const auto& v : values) ++counts[f][v];
    }
    for (search::Facet f : search::kAllFacets) {
        auto it = counts.find(f);
        if (it == counts.end()) continue;
        std::vector<search::FacetCount> list;
        for (const auto& [v, n] : it->second) list.push_back({v, facet_label(f, v, profile), n});
        std::stable_sort(list.begin(), list.end(), [](const auto& a, const auto& b) { return a.count > b.count; });
        out.facets.emplace(std::string(search::to_string(f)), std::move(list));
    }
    return out;
}

}  // namespace olac::testing
