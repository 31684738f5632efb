#include "amac/ingest.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <regex>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "amac/text.hpp"

namespace amac::ingest {

using nlohmann::json;

namespace {

// ---------------------------------------------------------------------------
// Dataset parsing

void require_keys(const json& obj, const std::unordered_set<std::string>& allowed,
                  const char* where, long line) {
    for (const auto& item : obj.items()) {
        if (!allowed.count(item.key())) {
            throw SchemaError(std::string(where) + ": unknown field '" + item.key() + "'", line);
        }
    }
}

Turn parse_turn(const json& j, const std::string& conversation_id, long line) {
    if (!j.is_object()) throw SchemaError("turn must be an object", line);
    require_keys(j, {"id", "speaker", "text", "ts"}, "turn", line);
    for (const char* key : {"id", "speaker", "text", "ts"}) {
        if (!j.contains(key)) throw SchemaError(std::string("turn missing field '") + key + "'", line);
    }
    if (!j["id"].is_number_integer()) throw SchemaError("turn 'id' must be an integer", line);
    if (!j["speaker"].is_string()) throw SchemaError("turn 'speaker' must be a string", line);
    if (!j["text"].is_string()) throw SchemaError("turn 'text' must be a string", line);
    if (!j["ts"].is_number_integer()) throw SchemaError("turn 'ts' must be epoch seconds", line);
    Turn turn;
    turn.turn_id = j["id"].get<int>();
    turn.session_id = conversation_id;
    turn.speaker = j["speaker"].get<std::string>();
    turn.text = j["text"].get<std::string>();
    turn.timestamp = j["ts"].get<std::int64_t>();
    return turn;
}

DatasetRecord parse_record(const json& j, long line) {
    if (!j.is_object()) throw SchemaError("record must be an object", line);
    require_keys(j, {"conversation_id", "domain", "turns", "labels"}, "record", line);
    if (!j.contains("conversation_id") || !j["conversation_id"].is_string()) {
        throw SchemaError("record missing string 'conversation_id'", line);
    }

    DatasetRecord record;
    record.conversation.conversation_id = j["conversation_id"].get<std::string>();

    record.conversation.domain_tag = Domain::Other;
    if (j.contains("domain")) {
        if (!j["domain"].is_string()) throw SchemaError("'domain' must be a string", line);
        try {
            record.conversation.domain_tag = domain_from_string(j["domain"].get<std::string>());
        } catch (const InputError& e) {
            throw SchemaError(e.what(), line);
        }
    }

    if (!j.contains("turns") || !j["turns"].is_array() || j["turns"].empty()) {
        throw SchemaError("record needs a non-empty 'turns' array", line);
    }
    std::unordered_set<int> turn_ids;
    int last_id = 0;
    std::int64_t last_ts = 0;
    bool first = true;
    for (const json& tj : j["turns"]) {
        Turn turn = parse_turn(tj, record.conversation.conversation_id, line);
        if (!first && turn.turn_id <= last_id) {
            throw SchemaError("turn ids must be strictly increasing", line);
        }
        if (!first && turn.timestamp < last_ts) {
            throw SchemaError("turn timestamps must be non-decreasing", line);
        }
        first = false;
        last_id = turn.turn_id;
        last_ts = turn.timestamp;
        turn_ids.insert(turn.turn_id);
        record.conversation.turns.push_back(std::move(turn));
    }

    if (j.contains("labels")) {
        if (!j["labels"].is_array()) throw SchemaError("'labels' must be an array", line);
        record.has_labels = true;
        for (const json& lj : j["labels"]) {
            if (!lj.is_object()) throw SchemaError("label must be an object", line);
            require_keys(lj, {"text", "turn_ids", "admit"}, "label", line);
            for (const char* key : {"text", "turn_ids", "admit"}) {
                if (!lj.contains(key)) {
                    throw SchemaError(std::string("label missing field '") + key + "'", line);
                }
            }
            if (!lj["text"].is_string() || lj["text"].get<std::string>().empty()) {
                throw SchemaError("label 'text' must be a non-empty string", line);
            }
            if (!lj["turn_ids"].is_array() || lj["turn_ids"].empty()) {
                throw SchemaError("label 'turn_ids' must be a non-empty array", line);
            }
            if (!lj["admit"].is_boolean()) throw SchemaError("label 'admit' must be a boolean", line);
            LabeledCandidate label;
            label.text = lj["text"].get<std::string>();
            label.admit = lj["admit"].get<bool>();
            for (const json& idj : lj["turn_ids"]) {
                if (!idj.is_number_integer()) throw SchemaError("label turn id must be an integer", line);
                const int id = idj.get<int>();
                if (!turn_ids.count(id)) {
                    throw SchemaError("label references unknown turn id " + std::to_string(id), line);
                }
                label.turn_ids.push_back(id);
            }
            record.labels.push_back(std::move(label));
        }
    }
    return record;
}

// ---------------------------------------------------------------------------
// Segmentation

bool is_abbreviation(const std::string& word) {
    static const std::unordered_set<std::string> kAbbrev = {
        "mr", "mrs", "ms", "dr", "prof", "sr", "jr", "st", "vs", "etc", "eg", "ie",
        "approx", "dept", "univ", "inc", "ltd", "co", "no", "am", "pm",
        "jan", "feb", "mar", "apr", "jun", "jul", "aug", "sep", "sept", "oct", "nov", "dec",
        "mon", "tue", "tues", "wed", "thu", "thur", "thurs", "fri", "sat", "sun",
    };
    return word.size() <= 1 || kAbbrev.count(word) > 0;
}

std::vector<std::string> split_sentences(const std::string& str) {
    std::vector<std::string> sentences;
    std::string current;
    for (std::size_t i = 0; i < str.size(); ++i) {
        current.push_back(str[i]);
        const char c = str[i];
        if (c != '.' && c != '!' && c != '?') continue;
        // Consume the rest of the terminal run plus trailing quotes.
        std::size_t j = i + 1;
        while (j < str.size() && (str[j] == '.' || str[j] == '!' || str[j] == '?' ||
                                  str[j] == '"' || str[j] == '\'')) {
            current.push_back(str[j]);
            ++j;
        }
        const bool at_end = j >= str.size();
        const bool followed_by_space = !at_end && std::isspace(static_cast<unsigned char>(str[j]));
        if (!at_end && !followed_by_space) {
            i = j - 1;
            continue;
        }
        if (c == '.') {
            // Word immediately before the period; guard abbreviations and initials.
            std::string word;
            for (std::size_t k = current.size() - (j - i); k-- > 0;) {
                const auto ch = static_cast<unsigned char>(current[k]);
                if (std::isalpha(ch)) word.insert(word.begin(), static_cast<char>(std::tolower(ch)));
                else break;
            }
            if (!word.empty() && is_abbreviation(word)) {
                i = j - 1;
                continue;
            }
        }
        sentences.push_back(text::trim(current));
        current.clear();
        i = j - 1;
    }
    if (!text::trim(current).empty()) sentences.push_back(text::trim(current));
    std::erase_if(sentences, [](const std::string& s) { return s.empty(); });
    return sentences;
}

bool starts_with_subject(const std::string& str, std::size_t pos) {
    std::string word;
    for (std::size_t i = pos; i < str.size(); ++i) {
        const auto c = static_cast<unsigned char>(str[i]);
        if (std::isalpha(c)) word.push_back(static_cast<char>(std::tolower(c)));
        else break;
    }
    static const std::unordered_set<std::string> kSubjects = {"i", "you", "he", "she", "we",
                                                              "they", "it"};
    return kSubjects.count(word) > 0;
}

// Clause split points: ", and " / ", but " / ", so " / "; " always, and a
// bare " and " / " but " when a subject pronoun follows (two independent
// clauses rather than a coordinated noun phrase).
std::vector<std::string> split_clauses(const std::string& sentence) {
    const std::string lower = text::to_lower(sentence);
    std::vector<std::string> parts;
    std::size_t start = 0;
    std::size_t i = 0;
    auto flush = [&](std::size_t end, std::size_t next) {
        const std::string part = text::trim(sentence.substr(start, end - start));
        if (!part.empty()) parts.push_back(part);
        start = next;
        i = next;
    };
    while (i < lower.size()) {
        bool matched = false;
        for (const std::string conj : {", and ", ", but ", ", so ", "; "}) {
            if (lower.compare(i, conj.size(), conj) == 0) {
                flush(i, i + conj.size());
                matched = true;
                break;
            }
        }
        if (matched) continue;
        for (const std::string conj : {" and ", " but "}) {
            if (lower.compare(i, conj.size(), conj) == 0 &&
                starts_with_subject(lower, i + conj.size())) {
                flush(i, i + conj.size());
                matched = true;
                break;
            }
        }
        if (!matched) ++i;
    }
    flush(sentence.size(), sentence.size());
    return parts;
}

// ---------------------------------------------------------------------------
// Normalization: pronouns and relative dates

struct CivilDate {
    std::chrono::year_month_day ymd;
    std::chrono::sys_days day;
};

CivilDate civil_from_epoch(std::int64_t ts) {
    // Floor division keeps pre-1970 timestamps on the right calendar day.
    std::int64_t days = ts / 86400;
    if (ts % 86400 < 0) --days;
    const std::chrono::sys_days d{std::chrono::days{days}};
    return {std::chrono::year_month_day{d}, d};
}

std::string iso_date(std::chrono::sys_days day) {
    const std::chrono::year_month_day ymd{day};
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
    return buf;
}

std::string iso_month(std::chrono::year_month ym) {
    char buf[12];
    std::snprintf(buf, sizeof(buf), "%04d-%02u", static_cast<int>(ym.year()),
                  static_cast<unsigned>(ym.month()));
    return buf;
}

std::chrono::sys_days monday_of(std::chrono::sys_days day) {
    const std::chrono::weekday wd{day};
    return day - (wd - std::chrono::Monday);
}

int weekday_index(const std::string& name) {
    static const char* kNames[] = {"sunday", "monday", "tuesday", "wednesday",
                                   "thursday", "friday", "saturday"};
    for (int i = 0; i < 7; ++i) {
        if (name == kNames[i]) return i;
    }
    return -1;
}

std::string resolve_date_phrase(const std::smatch& m, const CivilDate& now) {
    using std::chrono::days;
    using std::chrono::months;
    using std::chrono::sys_days;
    using std::chrono::year_month;
    using std::chrono::years;

    if (m[1].matched) {  // "<N> days|weeks ago"
        const long n = std::stol(m[1].str());
        const std::string unit = text::to_lower(m[2].str());
        const long day_count = unit.starts_with("week") ? n * 7 : n;
        return "on " + iso_date(now.day - days{day_count});
    }
    if (m[3].matched) {  // "last|next <unit>"
        const bool next = text::to_lower(m[3].str()) == "next";
        const std::string unit = text::to_lower(m[4].str());
        if (unit == "week") {
            const sys_days monday = monday_of(now.day) + days{next ? 7 : -7};
            return "in the week of " + iso_date(monday);
        }
        if (unit == "month") {
            const year_month ym = year_month{now.ymd.year(), now.ymd.month()} +
                                  months{next ? 1 : -1};
            return "in " + iso_month(ym);
        }
        if (unit == "year") {
            return "in " + std::to_string(static_cast<int>(now.ymd.year()) + (next ? 1 : -1));
        }
        const int target = weekday_index(unit);
        const int current = static_cast<int>(std::chrono::weekday{now.day}.c_encoding());
        // Strictly before for "last", strictly after for "next".
        int delta = next ? (target - current + 7) % 7 : -((current - target + 7) % 7);
        if (delta == 0) delta = next ? 7 : -7;
        return "on " + iso_date(now.day + days{delta});
    }
    const std::string word = text::to_lower(m[5].str());
    if (word == "yesterday") return "on " + iso_date(now.day - days{1});
    if (word == "tomorrow") return "on " + iso_date(now.day + days{1});
    return "on " + iso_date(now.day);  // "today"
}

const std::regex& date_regex() {
    static const std::regex re(
        R"((\d+)\s+(days?|weeks?)\s+ago\b)"
        R"(|\b(last|next)\s+(monday|tuesday|wednesday|thursday|friday|saturday|sunday|week|month|year)\b)"
        R"(|\b(yesterday|today|tomorrow)\b)",
        std::regex::icase);
    return re;
}

const std::regex& pronoun_regex() {
    // Ordered alternation: contractions before their bare pronoun.
    static const std::regex re(
        R"(\b(i'm|i've|i'll|i'd|i|my|mine|me)"
        R"(|you're|you've|you'll|you'd|you|your|yours)"
        R"(|we're|we've|we'll|we'd|we|our|ours|us)\b)",
        std::regex::icase);
    return re;
}

std::string rewrite_pronouns(const std::string& input, const std::string& speaker,
                             const std::string& addressee,
                             std::vector<std::string>* unresolved) {
    std::string out;
    out.reserve(input.size());
    auto begin = std::sregex_iterator(input.begin(), input.end(), pronoun_regex());
    auto end = std::sregex_iterator();
    std::size_t last = 0;
    for (auto it = begin; it != end; ++it) {
        const std::smatch& m = *it;
        out.append(input, last, static_cast<std::size_t>(m.position()) - last);
        const std::string p = text::to_lower(m.str());
        std::string replacement;
        if (p == "i" || p == "me") replacement = speaker;
        else if (p == "i'm") replacement = speaker + " is";
        else if (p == "i've") replacement = speaker + " has";
        else if (p == "i'll") replacement = speaker + " will";
        else if (p == "i'd") replacement = speaker + " would";
        else if (p == "my" || p == "mine") replacement = speaker + "'s";
        else if (p.starts_with("you")) {
            if (addressee.empty()) {
                if (unresolved) unresolved->push_back(m.str());
                replacement = m.str();
            } else if (p == "you") replacement = addressee;
            else if (p == "you're") replacement = addressee + " is";
            else if (p == "you've") replacement = addressee + " has";
            else if (p == "you'll") replacement = addressee + " will";
            else if (p == "you'd") replacement = addressee + " would";
            else replacement = addressee + "'s";  // your, yours
        } else {
            // First-person plural is ambiguous between speakers; leave it.
            if (unresolved) unresolved->push_back(m.str());
            replacement = m.str();
        }
        out += replacement;
        last = static_cast<std::size_t>(m.position() + m.length());
    }
    out.append(input, last, input.size() - last);
    return out;
}

std::string rewrite_dates(const std::string& input, const CivilDate& now) {
    std::string out;
    out.reserve(input.size());
    auto begin = std::sregex_iterator(input.begin(), input.end(), date_regex());
    auto end = std::sregex_iterator();
    std::size_t last = 0;
    for (auto it = begin; it != end; ++it) {
        const std::smatch& m = *it;
        out.append(input, last, static_cast<std::size_t>(m.position()) - last);
        out += resolve_date_phrase(m, now);
        last = static_cast<std::size_t>(m.position() + m.length());
    }
    out.append(input, last, input.size() - last);
    return out;
}

std::string make_candidate_id(const std::string& conversation_id, int turn_id, std::size_t unit_index) {
    const std::string key =
        conversation_id + "|" + std::to_string(turn_id) + "|" + std::to_string(unit_index);
    return text::hex64(text::fnv1a64(key));
}

std::string make_label_candidate_id(const std::string& conversation_id,
                                    const std::vector<int>& turn_ids, const std::string& txt) {
    std::string key = conversation_id + "|L";
    for (int id : turn_ids) key += ":" + std::to_string(id);
    key += "|" + txt;
    return text::hex64(text::fnv1a64(key));
}

}  // namespace

Dataset parse_dataset_string(const std::string& content) {
    Dataset dataset;
    dataset.content_hash = text::fnv1a64(content);
    std::istringstream in(content);
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (text::trim(line).empty()) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception& e) {
            throw SchemaError(std::string("invalid JSON: ") + e.what(), line_no);
        }
        dataset.records.push_back(parse_record(j, line_no));
    }
    return dataset;
}

Dataset parse_dataset(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SchemaError("cannot read dataset file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_dataset_string(buf.str());
}

std::vector<std::string> segment_turn(const Turn& turn) {
    std::vector<std::string> units;
    for (const std::string& sentence : split_sentences(turn.text)) {
        for (std::string& clause : split_clauses(sentence)) {
            if (!clause.empty()) units.push_back(std::move(clause));
        }
    }
    return units;
}

bool is_noise(const std::string& unit) {
    static const std::unordered_set<std::string> kAckWords = {
        "hi", "hello", "hey", "thanks", "thank", "you", "ok", "okay", "yes", "yeah",
        "yep", "no", "nope", "sure", "bye", "goodbye", "cool", "great", "nice", "good",
        "fine", "alright", "right", "hmm", "huh", "oh", "wow", "haha", "lol", "welcome",
        "please", "sorry", "morning", "evening", "night", "afternoon", "sounds", "got",
        "it", "problem", "see", "later", "too", "indeed", "totally", "exactly", "really",
    };
    const std::vector<std::string> tokens = text::tokenize(unit);
    if (tokens.empty()) return true;  // pure punctuation or emoji
    bool all_ack = true;
    for (const std::string& t : tokens) {
        if (!kAckWords.count(t)) {
            all_ack = false;
            break;
        }
    }
    if (all_ack) return true;
    return tokens.size() < 3;
}

CandidateMemory normalize_candidate(const std::string& unit, const std::vector<Turn>& history,
                                    const Turn& turn) {
    std::string addressee;
    for (auto it = history.rbegin(); it != history.rend(); ++it) {
        if (it->turn_id >= turn.turn_id) continue;
        if (it->speaker != turn.speaker) {
            addressee = it->speaker;
            break;
        }
    }

    CandidateMemory candidate;
    candidate.speaker = turn.speaker;
    candidate.source_turn_ids = {turn.turn_id};
    candidate.event_time = turn.timestamp;

    std::string rewritten =
        rewrite_pronouns(unit, turn.speaker, addressee, &candidate.unresolved_refs);
    rewritten = rewrite_dates(rewritten, civil_from_epoch(turn.timestamp));
    candidate.text = text::trim(rewritten);
    return candidate;
}

std::vector<CandidateMemory> extract_candidates(const Conversation& conversation) {
    std::vector<CandidateMemory> candidates;
    for (std::size_t t = 0; t < conversation.turns.size(); ++t) {
        const Turn& turn = conversation.turns[t];
        const std::vector<Turn> history(conversation.turns.begin(),
                                        conversation.turns.begin() + static_cast<long>(t) + 1);
        const std::vector<std::string> units = segment_turn(turn);
        for (std::size_t u = 0; u < units.size(); ++u) {
            if (is_noise(units[u])) continue;
            CandidateMemory candidate = normalize_candidate(units[u], history, turn);
            candidate.candidate_id =
                make_candidate_id(conversation.conversation_id, turn.turn_id, u);
            candidates.push_back(std::move(candidate));
        }
    }
    return candidates;
}

std::vector<CandidateMemory> candidates_from_labels(const DatasetRecord& record) {
    std::vector<CandidateMemory> candidates;
    for (const LabeledCandidate& label : record.labels) {
        CandidateMemory candidate;
        candidate.text = label.text;
        candidate.source_turn_ids = label.turn_ids;
        candidate.gold_label = label.admit;
        candidate.candidate_id = make_label_candidate_id(record.conversation.conversation_id,
                                                         label.turn_ids, label.text);
        std::int64_t latest_ts = 0;
        int latest_id = -1;
        for (const Turn& turn : record.conversation.turns) {
            for (int id : label.turn_ids) {
                if (turn.turn_id == id && (latest_id < 0 || id >= latest_id)) {
                    latest_id = id;
                    latest_ts = turn.timestamp;
                    candidate.speaker = turn.speaker;
                }
            }
        }
        candidate.event_time = latest_ts;
        candidates.push_back(std::move(candidate));
    }
    return candidates;
}

std::vector<CandidateMemory> candidates_for_processing(const DatasetRecord& record) {
    return record.has_labels ? candidates_from_labels(record)
                             : extract_candidates(record.conversation);
}

}  // namespace amac::ingest
