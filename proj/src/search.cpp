#include "olac/search.hpp"

#include <algorithm>
#include <set>

#include "olac/crosswalk.hpp"
#include "olac/error.hpp"
#include "olac/language_code.hpp"
#include "olac/text.hpp"

namespace olac::search {

namespace {

constexpr std::array<std::pair<Facet, std::string_view>, 8> kFacetIds{{
    {Facet::SubjectLanguage, "subject_language"},
    {Facet::Language, "language"},
    {Facet::LinguisticType, "linguistic_type"},
    {Facet::DiscourseType, "discourse_type"},
    {Facet::LinguisticField, "linguistic_field"},
    {Facet::Role, "role"},
    {Facet::Archive, "archive"},
    {Facet::DcType, "dc_type"},
}};

std::optional<std::string_view> vocabulary_of(Facet facet) {
    switch (facet) {
        case Facet::LinguisticType: return kLinguisticTypeVocabulary;
        case Facet::DiscourseType: return kDiscourseTypeVocabulary;
        case Facet::LinguisticField: return kLinguisticFieldVocabulary;
        case Facet::Role: return kRoleVocabulary;
        default: return std::nullopt;
    }
}

bool set(const std::optional<std::string>& v) { return v && !text::is_blank(*v); }

constexpr char kSep = '\x1f';

}  // namespace

std::string_view to_string(Facet facet) {
    for (const auto& [f, id] : kFacetIds)
        if (f == facet) return id;
    return "";
}

Facet parse_facet(std::string_view id) {
    for (const auto& [f, name] : kFacetIds)
        if (name == id) return f;
    throw UnknownFacet("unknown facet '" + std::string(id) + "'");
}

bool Query::empty() const {
    if (set(text) && !text::tokenize(*text).empty()) return false;
    return !(set(subject_language) || set(language) || set(linguistic_type) || set(discourse_type) ||
             set(linguistic_field) || set(role) || set(name) || set(archive) || set(dc_type));
}

std::string resolve_term_criterion(std::string_view vocab_id, std::string_view input, const Profile& profile) {
    const std::string trimmed(text::trim(input));
    if (auto term = profile.find_term(vocab_id, trimmed)) return term->code;
    if (const Vocabulary* v = profile.vocabularies.find(vocab_id)) {
        const std::string key = term_key(trimmed);
        for (const auto& t : v->terms())
            if (term_key(t.label) == key) return t.code;
    }
    return trimmed;
}

std::vector<std::string> resolve_language_criterion(std::string_view input, const Profile& profile) {
    const std::string trimmed(text::trim(input));
    std::set<std::string> keys;
    auto code = try_parse_language_code(trimmed);
    if (code) {
        const std::string cls = profile.equivalences.class_key(*code);
        if (profile.languages.contains(*code) || profile.equivalences.members(cls).size() > 1) return {cls};
    }
    for (const auto& c : profile.aliases.resolve(trimmed)) keys.insert(profile.equivalences.class_key(c));
    if (keys.empty() && code) keys.insert(profile.equivalences.class_key(*code));
    return {keys.begin(), keys.end()};
}

EntryFacets extract_facets(const catalog::EntryKey& key, const OlacRecord& record, const Profile& profile) {
    EntryFacets out;
    out.values[Facet::Archive].push_back(key.archive);
    for (const auto& el : record.elements()) {
        const bool vocab = el.qualifier && el.qualifier->kind == Qualifier::Kind::Vocabulary;
        if (vocab && el.code) {
            const std::string& id = el.qualifier->id;
            if (id == kLanguageVocabulary) {
                if (auto lc = try_parse_language_code(*el.code)) {
                    if (el.name == ElementName::Subject)
                        out.values[Facet::SubjectLanguage].push_back(profile.equivalences.class_key(*lc));
                    else if (el.name == ElementName::Language)
                        out.values[Facet::Language].push_back(profile.equivalences.class_key(*lc));
                }
            } else {
                for (Facet f : {Facet::LinguisticType, Facet::DiscourseType, Facet::LinguisticField, Facet::Role}) {
                    if (*vocabulary_of(f) == id) out.values[f].push_back(resolve_term_criterion(id, *el.code, profile));
                }
            }
        }
        if (el.name == ElementName::Type && !vocab && el.content && !text::is_blank(*el.content))
            out.values[Facet::DcType].push_back(text::fold_case(text::collapse_whitespace(*el.content)));
        if (el.name == ElementName::Creator || el.name == ElementName::Contributor) {
            std::string role;
            if (vocab && el.qualifier->id == kRoleVocabulary && el.code)
                role = resolve_term_criterion(kRoleVocabulary, *el.code, profile);
            std::string name = el.content ? text::normalize_name(*el.content) : std::string();
            if (!name.empty()) out.people.emplace_back(role, name);
        }
    }
    return out;
}

namespace {

std::string first_content(const OlacRecord& record, ElementName name) {
    for (const auto& el : record.elements())
        if (el.name == name && el.content) return text::collapse_whitespace(*el.content);
    return {};
}

std::string first_rendered(const OlacRecord& record, ElementName name, const Profile& profile) {
    for (const auto& el : record.elements())
        if (el.name == name) return render_value(el, profile);
    return {};
}

}  // namespace

Index Index::build(const catalog::Snapshot& snapshot, const Profile& profile) {
    Index ix;
    ix.snapshot_id_ = snapshot.id;
    ix.profile_ = &profile;
    for (const auto& [key, entry] : snapshot.entries) {
        if (entry->deleted() || !entry->record) continue;
        const OlacRecord& rec = *entry->record;
        const auto doc = static_cast<std::uint32_t>(ix.docs_.size());
        Doc d;
        d.item.key = key;
        d.item.title = first_content(rec, ElementName::Title);
        d.item.language = first_rendered(rec, ElementName::Language, profile);
        d.item.type = first_rendered(rec, ElementName::Type, profile);
        d.item.snippet = text::utf8_prefix(first_content(rec, ElementName::Description), 200);

        auto add = [doc](std::unordered_map<std::string, Postings>& map, const std::string& term) {
            auto& list = map[term];
            if (!list.empty() && list.back().first == doc) ++list.back().second;
            else list.emplace_back(doc, 1);
        };

        EntryFacets facets = extract_facets(key, rec, profile);
        for (auto& [facet, values] : facets.values) {
            for (const auto& v : values) add(ix.facets_[facet], v);
            std::sort(values.begin(), values.end());
            values.erase(std::unique(values.begin(), values.end()), values.end());
            d.facet_values[facet] = std::move(values);
        }
        for (const auto& [role, name] : facets.people) {
            add(ix.people_, std::string(1, kSep) + name);
            if (!role.empty()) add(ix.people_, role + kSep + name);
        }
        for (const auto& el : rec.elements()) {
            if (!el.content) continue;
            for (const auto& tok : text::tokenize(*el.content)) add(ix.tokens_, tok);
        }
        ix.docs_.push_back(std::move(d));
    }
    return ix;
}

Index::Postings Index::merge_union(const std::vector<const Postings*>& lists) {
    std::map<std::uint32_t, std::uint32_t> acc;
    for (const Postings* l : lists)
        for (const auto& [doc, hits] : *l) acc[doc] += hits;
    return {acc.begin(), acc.end()};
}

std::string Index::label(Facet facet, const std::string& value) const {
    if (facet == Facet::Language || facet == Facet::SubjectLanguage) return profile_->language_class_label(value);
    if (auto vocab = vocabulary_of(facet)) {
        if (auto term = profile_->find_term(*vocab, value)) return term->label;
    }
    return value;
}

std::vector<FacetCount> Index::count(Facet facet, const std::vector<std::uint32_t>& docs) const {
    std::map<std::string, std::size_t> counts;
    for (std::uint32_t d : docs) {
        auto it = docs_[d].facet_values.find(facet);
        if (it == docs_[d].facet_values.end()) continue;
        for (const auto& v : it->second) ++counts[v];
    }
    std::vector<FacetCount> out;
    out.reserve(counts.size());
    for (const auto& [value, n] : counts) out.push_back(FacetCount{value, label(facet, value), n});
    std::stable_sort(out.begin(), out.end(), [](const FacetCount& a, const FacetCount& b) { return a.count > b.count; });
    return out;
}

ResultSet Index::execute(const Query& query, std::size_t offset, std::optional<std::size_t> limit) const {
    if (query.empty()) throw EmptyQuery();
    static const Postings kNone;
    const Profile& profile = profile_ ? *profile_ : Profile::builtin();

    std::vector<Postings> criteria;
    auto lookup = [&](const std::unordered_map<std::string, Postings>& map, const std::string& term) -> const Postings& {
        auto it = map.find(term);
        return it == map.end() ? kNone : it->second;
    };
    auto facet_map = [&](Facet f) -> const std::unordered_map<std::string, Postings>& {
        static const std::unordered_map<std::string, Postings> kEmpty;
        auto it = facets_.find(f);
        return it == facets_.end() ? kEmpty : it->second;
    };

    if (set(query.text)) {
        std::vector<std::string> toks = text::tokenize(*query.text);
        std::sort(toks.begin(), toks.end());
        toks.erase(std::unique(toks.begin(), toks.end()), toks.end());
        for (const auto& t : toks) criteria.push_back(lookup(tokens_, t));
    }
    for (auto [facet, value] : {std::pair{Facet::SubjectLanguage, &query.subject_language},
                                std::pair{Facet::Language, &query.language}}) {
        if (!set(*value)) continue;
        std::vector<const Postings*> lists;
        for (const auto& k : resolve_language_criterion(**value, profile)) lists.push_back(&lookup(facet_map(facet), k));
        criteria.push_back(merge_union(lists));
    }
    for (auto [facet, value] : {std::pair{Facet::LinguisticType, &query.linguistic_type},
                                std::pair{Facet::DiscourseType, &query.discourse_type},
                                std::pair{Facet::LinguisticField, &query.linguistic_field}}) {
        if (!set(*value)) continue;
        criteria.push_back(lookup(facet_map(facet), resolve_term_criterion(*vocabulary_of(facet), **value, profile)));
    }
    const bool has_role = set(query.role);
    const bool has_name = set(query.name);
    const std::string role = has_role ? resolve_term_criterion(kRoleVocabulary, *query.role, profile) : "";
    const std::string name = has_name ? text::normalize_name(*query.name) : "";
    if (has_role && has_name) criteria.push_back(lookup(people_, role + kSep + name));
    else if (has_name) criteria.push_back(lookup(people_, std::string(1, kSep) + name));
    else if (has_role) criteria.push_back(lookup(facet_map(Facet::Role), role));
    if (set(query.archive)) criteria.push_back(lookup(facet_map(Facet::Archive), std::string(text::trim(*query.archive))));
    if (set(query.dc_type))
        criteria.push_back(lookup(facet_map(Facet::DcType), text::fold_case(text::collapse_whitespace(*query.dc_type))));

    std::sort(criteria.begin(), criteria.end(), [](const Postings& a, const Postings& b) { return a.size() < b.size(); });
    Postings acc = criteria.front();
    for (std::size_t i = 1; i < criteria.size() && !acc.empty(); ++i) {
        Postings next;
        const Postings& other = criteria[i];
        std::size_t j = 0;
        for (const auto& [doc, hits] : acc) {
            while (j < other.size() && other[j].first < doc) ++j;
            if (j < other.size() && other[j].first == doc) next.emplace_back(doc, hits + other[j].second);
        }
        acc = std::move(next);
    }

    // Docs are in key order, so a stable sort on score alone gives the total order.
    std::stable_sort(acc.begin(), acc.end(), [](const auto& a, const auto& b) { return a.second > b.second; });

    ResultSet out;
    out.snapshot = snapshot_id_;
    out.total = acc.size();
    std::vector<std::uint32_t> docs;
    docs.reserve(acc.size());
    for (const auto& [doc, hits] : acc) docs.push_back(doc);
    const std::size_t end = limit ? std::min(acc.size(), offset + *limit) : acc.size();
    for (std::size_t i = offset; i < end; ++i) {
        ResultItem item = docs_[acc[i].first].item;
        item.score = acc[i].second;
        out.items.push_back(std::move(item));
    }
    for (Facet f : kAllFacets) {
        auto counts = count(f, docs);
        if (!counts.empty()) out.facets.emplace(std::string(to_string(f)), std::move(counts));
    }
    return out;
}

std::vector<FacetCount> Index::facet_values(std::string_view facet_id) const {
    Facet f = parse_facet(facet_id);
    std::vector<std::uint32_t> all(docs_.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<std::uint32_t>(i);
    return count(f, all);
}

const ResultItem* Index::item(const catalog::EntryKey& key) const {
    auto it = std::lower_bound(docs_.begin(), docs_.end(), key,
                               [](const Doc& d, const catalog::EntryKey& k) { return d.item.key < k; });
    if (it == docs_.end() || it->item.key != key) return nullptr;
    return &it->item;
}

}  // namespace olac::search
