#include "olac/vocabulary.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "olac/embedded_data.hpp"
#include "olac/error.hpp"
#include "olac/text.hpp"

namespace olac {

namespace {

std::string read_file(const std::string& path, const char* what) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(std::string("cannot read ") + what + " " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

bool skip_line(std::string_view line) { return text::is_blank(line) || line.front() == '#'; }

std::string line_error(const char* what, std::size_t lineno, const std::string& message) {
    return std::string(what) + " line " + std::to_string(lineno) + ": " + message;
}

// Iterates `a<TAB>b` data lines, skipping comments and blanks.
template <typename Fn>
void for_each_pair(std::string_view content, const char* what, Fn&& fn) {
    std::size_t lineno = 0;
    for (auto line : text::lines(content)) {
        ++lineno;
        if (skip_line(line)) continue;
        auto fields = text::split(line, '\t');
        if (fields.size() != 2 || text::trim(fields[0]).empty() || text::trim(fields[1]).empty())
            throw ParseError(line_error(what, lineno, "expected two tab-separated fields"));
        try {
            fn(text::trim(fields[0]), text::trim(fields[1]));
        } catch (const MalformedTag& e) {
            throw ParseError(line_error(what, lineno, e.what()));
        }
    }
}

const std::string_view kShippedVocabularies[] = {
    "vocab/role.vocab",
    "vocab/linguistic-type.vocab",
    "vocab/discourse-type.vocab",
    "vocab/linguistic-field.vocab",
};

}  // namespace

std::string_view to_string(VocabStatus status) {
    return status == VocabStatus::Accepted ? "accepted" : "third-party";
}

std::string term_key(std::string_view code) {
    std::string s = text::ascii_lower(code);
    std::replace(s.begin(), s.end(), '_', ' ');
    return text::collapse_whitespace(s);
}

Vocabulary Vocabulary::parse(std::string_view content, VocabStatus status) {
    auto all = text::lines(content);
    std::size_t i = 0;
    while (i < all.size() && skip_line(all[i])) ++i;
    if (i == all.size()) throw ParseError("vocabulary file is empty; expected a 'vocab <id>' header");
    auto header = text::trim(all[i]);
    if (header.substr(0, 6) != "vocab " || text::trim(header.substr(6)).empty())
        throw ParseError(line_error("vocabulary", i + 1, "expected 'vocab <id>' header"));
    Vocabulary vocab(std::string(text::trim(header.substr(6))), status);
    for (++i; i < all.size(); ++i) {
        auto line = all[i];
        if (skip_line(line)) continue;
        auto fields = text::split(line, '\t');
        if (fields.size() > 2 || text::trim(fields[0]).empty())
            throw ParseError(line_error("vocabulary", i + 1, "expected code<TAB>label"));
        std::string code(text::trim(fields[0]));
        std::string label = fields.size() == 2 ? std::string(text::trim(fields[1])) : code;
        try {
            vocab.add({code, label.empty() ? code : label});
        } catch (const DuplicateId& e) {
            throw ParseError(line_error("vocabulary", i + 1, e.what()));
        }
    }
    return vocab;
}

void Vocabulary::add(VocabTerm term) {
    auto key = term_key(term.code);
    if (index_.count(key)) throw DuplicateId("duplicate code '" + term.code + "' in vocabulary " + id_);
    index_.emplace(std::move(key), terms_.size());
    terms_.push_back(std::move(term));
}

const VocabTerm* Vocabulary::find(std::string_view code) const {
    auto it = index_.find(term_key(code));
    return it == index_.end() ? nullptr : &terms_[it->second];
}

const VocabularyRegistry& VocabularyRegistry::builtin() {
    static const VocabularyRegistry registry = [] {
        VocabularyRegistry r;
        for (auto path : kShippedVocabularies)
            r.add(Vocabulary::parse(embedded::files().at(path), VocabStatus::Accepted));
        return r;
    }();
    return registry;
}

const Vocabulary& VocabularyRegistry::add(Vocabulary vocabulary) {
    if (vocabulary.id() == kLanguageVocabulary || vocabularies_.count(vocabulary.id()))
        throw DuplicateId("vocabulary '" + vocabulary.id() + "' is already registered");
    auto ptr = std::make_shared<const Vocabulary>(std::move(vocabulary));
    vocabularies_.emplace(ptr->id(), ptr);
    return *ptr;
}

const Vocabulary& VocabularyRegistry::register_extension(std::string_view definition) {
    return add(Vocabulary::parse(definition, VocabStatus::ThirdParty));
}

const Vocabulary& VocabularyRegistry::register_extension_file(const std::string& path) {
    return register_extension(read_file(path, "vocabulary file"));
}

const Vocabulary* VocabularyRegistry::find(std::string_view id) const {
    auto it = vocabularies_.find(id);
    return it == vocabularies_.end() ? nullptr : it->second.get();
}

std::vector<std::string> VocabularyRegistry::ids() const {
    std::vector<std::string> out;
    for (const auto& [id, _] : vocabularies_) out.push_back(id);
    return out;
}

LanguageTable LanguageTable::parse(std::string_view content) {
    LanguageTable table;
    for_each_pair(content, "language table", [&](std::string_view code, std::string_view name) {
        table.add(parse_language_code(code), std::string(name));
    });
    return table;
}

LanguageTable LanguageTable::load(const std::string& path) {
    return parse(read_file(path, "language table"));
}

const LanguageTable& LanguageTable::builtin() {
    static const LanguageTable table = parse(embedded::files().at("languages.tsv"));
    return table;
}

void LanguageTable::add(const LanguageCode& code, std::string name) {
    if (!names_.emplace(code.key(), name).second)
        throw DuplicateId("language code '" + code.to_string() + "' listed twice");
    entries_.emplace_back(code, std::move(name));
}

const std::string* LanguageTable::name_of(const LanguageCode& code) const {
    auto it = names_.find(code.key());
    return it == names_.end() ? nullptr : &it->second;
}

AliasTable AliasTable::parse(std::string_view content) {
    AliasTable table;
    for_each_pair(content, "alias table", [&](std::string_view name, std::string_view code) {
        table.add(name, parse_language_code(code));
    });
    return table;
}

AliasTable AliasTable::load(const std::string& path) { return parse(read_file(path, "alias table")); }

const AliasTable& AliasTable::builtin() {
    static const AliasTable table = parse(embedded::files().at("aliases.tsv"));
    return table;
}

void AliasTable::add(std::string_view name, const LanguageCode& code) {
    auto& codes = by_name_[text::normalize_name(name)];
    auto pos = std::lower_bound(codes.begin(), codes.end(), code,
                                [](const LanguageCode& a, const LanguageCode& b) { return a.key() < b.key(); });
    if (pos == codes.end() || pos->key() != code.key()) codes.insert(pos, code);
    entries_.emplace_back(std::string(name), code);
}

std::vector<LanguageCode> AliasTable::resolve(std::string_view name) const {
    auto it = by_name_.find(text::normalize_name(name));
    return it == by_name_.end() ? std::vector<LanguageCode>{} : it->second;
}

std::vector<LanguageCode> resolve_language_name(std::string_view name, const AliasTable& table) {
    return table.resolve(name);
}

EquivalenceTable EquivalenceTable::parse(std::string_view content) {
    EquivalenceTable table;
    for_each_pair(content, "equivalence table", [&](std::string_view iso, std::string_view ext) {
        auto iso_code = parse_language_code(iso);
        auto ext_code = parse_language_code(ext);
        if (iso_code.scheme != LanguageScheme::Iso639_1 || ext_code.scheme != LanguageScheme::Extension)
            throw MalformedTag("expected an ISO 639-1 code and an extension code");
        table.add(iso_code, ext_code);
    });
    return table;
}

EquivalenceTable EquivalenceTable::load(const std::string& path) {
    return parse(read_file(path, "equivalence table"));
}

const EquivalenceTable& EquivalenceTable::builtin() {
    static const EquivalenceTable table = parse(embedded::files().at("equivalences.tsv"));
    return table;
}

void EquivalenceTable::add(const LanguageCode& iso, const LanguageCode& extension) {
    auto rep = iso.key();
    auto ext = extension.key();
    if (representative_.count(ext) && representative_.at(ext) != rep)
        throw DuplicateId("extension code '" + extension.to_string() + "' already has an equivalent");
    representative_[rep] = rep;
    representative_[ext] = rep;
    auto& m = members_[rep];
    if (m.empty()) m.push_back(rep);
    if (std::find(m.begin(), m.end(), ext) == m.end()) m.push_back(ext);
}

std::string EquivalenceTable::class_key(const LanguageCode& code) const {
    auto key = code.key();
    auto it = representative_.find(key);
    return it == representative_.end() ? key : it->second;
}

std::vector<std::string> EquivalenceTable::members(std::string_view class_key) const {
    auto it = members_.find(class_key);
    if (it == members_.end()) return {std::string(class_key)};
    return it->second;
}

const Profile& Profile::builtin() {
    static const Profile profile{RefinementTable::builtin(), VocabularyRegistry::builtin(),
                                 LanguageTable::builtin(), AliasTable::builtin(),
                                 EquivalenceTable::builtin()};
    return profile;
}

bool Profile::is_vocabulary(std::string_view id) const {
    return id == kLanguageVocabulary || vocabularies.find(id) != nullptr;
}

std::optional<VocabTerm> Profile::find_term(std::string_view vocab_id, std::string_view code) const {
    if (vocab_id == kLanguageVocabulary) {
        auto lc = try_parse_language_code(code);
        if (!lc) return std::nullopt;
        const std::string* name = languages.name_of(*lc);
        if (!name) return std::nullopt;
        return VocabTerm{lc->to_string(), *name};
    }
    const Vocabulary* vocab = vocabularies.find(vocab_id);
    if (!vocab) throw UnknownVocabulary("unknown vocabulary '" + std::string(vocab_id) + "'");
    if (const VocabTerm* term = vocab->find(code)) return *term;
    return std::nullopt;
}

VocabTerm Profile::lookup_term(std::string_view vocab_id, std::string_view code) const {
    if (auto term = find_term(vocab_id, code)) return *term;
    throw NotFound("'" + std::string(code) + "' is not a term of vocabulary " + std::string(vocab_id));
}

std::string Profile::language_class_label(std::string_view class_key) const {
    for (const auto& member : equivalences.members(class_key)) {
        if (auto lc = try_parse_language_code(member)) {
            if (const std::string* name = languages.name_of(*lc)) return *name;
        }
    }
    return std::string(class_key);
}

}  // namespace olac
