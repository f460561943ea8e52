#pragma once

#include <string>
#include <string_view>
#include <unordered_set>

namespace topicforge {

// Compact list of very common English words, used only to score the
// English-token ratio in filter_language. Not a stopword list: stopwords
// come from an external file supplied by the caller.
namespace detail {
inline constexpr std::string_view kEnglishWords[] = {
    "the", "be", "to", "of", "and", "a", "an", "in", "that", "have", "has",
    "had", "it", "for", "not", "on", "with", "he", "as", "you", "do", "at",
    "this", "but", "his", "by", "from", "they", "we", "say", "her", "she",
    "or", "will", "my", "one", "all", "would", "there", "their", "what",
    "so", "up", "out", "if", "about", "who", "get", "which", "go", "me",
    "when", "make", "can", "like", "time", "no", "just", "him", "know",
    "take", "people", "into", "year", "your", "good", "some", "could",
    "them", "see", "other", "than", "then", "now", "look", "only", "come",
    "its", "over", "think", "also", "back", "after", "use", "two", "how",
    "our", "work", "first", "well", "way", "even", "new", "want", "because",
    "any", "these", "give", "day", "most", "us", "is", "was", "are", "were",
    "been", "being", "am", "did", "does", "done", "said", "says", "went",
    "gone", "got", "made", "came", "saw", "seen", "took", "taken", "knew",
    "known", "thought", "looked", "looking", "very", "still", "too",
    "here", "where", "why", "before", "never", "should", "must", "may",
    "might", "much", "many", "more", "such", "those", "own", "same",
    "another", "each", "few", "both", "between", "under", "again",
    "while", "down", "off", "above", "below", "through", "during",
    "against", "until", "without", "within", "along", "around", "among",
    "man", "woman", "men", "women", "child", "children", "world", "life",
    "hand", "part", "place", "case", "week", "month", "night", "home",
    "water", "room", "mother", "father", "area", "money", "story", "fact",
    "right", "wrong", "left", "study", "book", "eye", "job", "word",
    "business", "issue", "side", "kind", "head", "house", "service",
    "friend", "power", "hour", "game", "line", "end", "member", "law",
    "car", "city", "town", "community", "name", "president", "team",
    "minute", "idea", "body", "information", "nothing", "something",
    "anything", "everything", "someone", "everyone", "anyone", "today",
    "tomorrow", "yesterday", "morning", "evening", "news", "report",
    "government", "police", "security", "attack", "fire", "market",
    "school", "student", "family", "country", "state", "nation", "group",
    "number", "person", "public", "social", "media", "help", "need",
    "call", "feel", "felt", "try", "ask", "tell", "told", "show", "play",
    "run", "move", "live", "believe", "hold", "bring", "happen", "write",
    "sit", "stand", "lose", "pay", "meet", "include", "continue", "set",
    "learn", "change", "lead", "understand", "watch", "follow", "stop",
    "create", "speak", "read", "spend", "grow", "open", "walk", "win",
    "teach", "offer", "remember", "love", "consider", "appear", "buy",
    "wait", "serve", "die", "send", "build", "stay", "fall", "cut",
    "reach", "kill", "killed", "remain", "big", "small", "large", "great",
    "little", "old", "young", "long", "short", "high", "low", "early",
    "late", "hard", "easy", "strong", "free", "true", "false", "real",
    "best", "better", "bad", "worse", "worst", "sure", "able", "last",
    "next", "least", "less", "every", "several", "whole", "main", "top",
    "far", "near", "always", "often", "once", "together", "really",
    "almost", "enough", "away", "yet", "ever", "however", "later",
    "please", "thanks", "thank", "yes", "ok", "okay", "oh", "god", "lol",
    "breaking", "live", "via", "says", "dead", "death", "blast", "bomb",
    "safe", "peace", "pray", "prayers", "sad", "happy", "hope", "stop",
    "man", "road", "near", "area", "three", "four", "five", "six",
    "seven", "eight", "nine", "ten", "hundred", "thousand", "million",
};
}  // namespace detail

inline const std::unordered_set<std::string>& english_wordlist() {
    static const std::unordered_set<std::string> words = [] {
        std::unordered_set<std::string> s;
        for (std::string_view w : detail::kEnglishWords) s.emplace(w);
        return s;
    }();
    return words;
}

}  // namespace topicforge
