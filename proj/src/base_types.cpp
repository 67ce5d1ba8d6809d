#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include "randomworld/types.hpp"

namespace randomworld {

namespace {

using Words = std::vector<std::string>;

std::function<Value(Rng&)> pick_gen(Words words) {
    return [words = std::move(words)](Rng& rng) { return Value(rng.pick(words)); };
}

std::function<bool(const Value&)> member_rec(Words words) {
    return [words = std::move(words)](const Value& v) {
        if (!v.is_string()) return false;
        for (const auto& w : words)
            if (w == v.as_string()) return true;
        return false;
    };
}

bool name_char(unsigned char c) {
    return std::isalnum(c) || c == ' ' || c == '&' || c == '.' || c == '-' || c == ':' ||
           c == ',' || c >= 0x80;
}

// Capitalized phrase ("The Grand Magnolia", "LaCrosse", "Ember & Oak"):
// starts with an uppercase letter, stays within the name charset, no runs of
// spaces, at least min_words space-separated tokens.
bool cap_phrase(const Value& v, int min_words) {
    if (!v.is_string()) return false;
    const std::string& s = v.as_string();
    if (s.empty() || s.size() > 100) return false;
    if (!std::isupper((unsigned char)s[0])) return false;
    if (s.back() == ' ') return false;
    int words = 1;
    for (size_t i = 0; i < s.size(); ++i) {
        unsigned char c = s[i];
        if (!name_char(c)) return false;
        if (c == ' ') {
            if (s[i + 1] == ' ') return false;
            ++words;
        }
    }
    return words >= min_words;
}

std::function<bool(const Value&)> cap_phrase_rec(int min_words) {
    return [min_words](const Value& v) { return cap_phrase(v, min_words); };
}

// Person-name style: two or more words, each starting uppercase.
bool title_words(const Value& v, int min_words) {
    if (!cap_phrase(v, min_words)) return false;
    const std::string& s = v.as_string();
    for (size_t i = 0; i + 1 < s.size(); ++i)
        if (s[i] == ' ' && !std::isupper((unsigned char)s[i + 1])) return false;
    return true;
}

std::function<Value(Rng&)> int_digits_gen(int lo_digits, int hi_digits) {
    return [lo_digits, hi_digits](Rng& rng) {
        int digits = (int)rng.uniform_int(lo_digits, hi_digits);
        int64_t lo = 1;
        for (int i = 1; i < digits; ++i) lo *= 10;
        int64_t hi = digits >= 19 ? INT64_MAX : lo * 10 - 1;
        if (digits == 1) lo = 0;
        return Value(rng.uniform_int(lo, hi));
    };
}

int count_digits(int64_t x) {
    if (x < 0) return -1;
    int d = 1;
    while (x >= 10) {
        x /= 10;
        ++d;
    }
    return d;
}

std::function<bool(const Value&)> int_digits_rec(int lo_digits, int hi_digits) {
    return [lo_digits, hi_digits](const Value& v) {
        if (!v.is_int()) return false;
        int d = count_digits(v.as_int());
        return d >= lo_digits && d <= hi_digits;
    };
}

std::function<Value(Rng&)> int_range_gen(int64_t lo, int64_t hi) {
    return [lo, hi](Rng& rng) { return Value(rng.uniform_int(lo, hi)); };
}

std::function<bool(const Value&)> int_range_rec(int64_t lo, int64_t hi) {
    return [lo, hi](const Value& v) { return v.is_int() && v.as_int() >= lo && v.as_int() <= hi; };
}

std::function<Value(Rng&)> float_gen(double lo, double hi, int decimals) {
    double scale = std::pow(10.0, decimals);
    return [lo, hi, scale](Rng& rng) {
        double x = rng.uniform_real(lo, hi);
        return Value(std::round(x * scale) / scale);
    };
}

// Numeric-kind recognizer. Float-rooted atoms accept any int or float value:
// the calculator tools compute sums/differences/products typed at the join of
// their argument types, so range checks here would reject legitimate
// intermediate values during gold evaluation.
std::function<bool(const Value&)> numeric_rec() {
    return [](const Value& v) { return v.is_numeric(); };
}

bool lower_alnum(const std::string& s, size_t from, size_t to, const char* extra) {
    for (size_t i = from; i < to; ++i) {
        unsigned char c = s[i];
        if (std::islower(c) || std::isdigit(c)) continue;
        if (extra && std::strchr(extra, c)) continue;
        return false;
    }
    return true;
}

bool mail_id_rec(const Value& v) {
    if (!v.is_string()) return false;
    const std::string& s = v.as_string();
    size_t at = s.find('@');
    if (at == std::string::npos || at == 0 || s.find('@', at + 1) != std::string::npos)
        return false;
    if (!lower_alnum(s, 0, at, "._")) return false;
    size_t dot = s.rfind('.');
    if (dot == std::string::npos || dot < at + 2 || dot + 2 > s.size() - 1) return false;
    if (!lower_alnum(s, at + 1, s.size(), ".")) return false;
    size_t tld = s.size() - dot - 1;
    return tld >= 2 && tld <= 3;
}

std::string random_lower(Rng& rng, int lo_len, int hi_len) {
    static const char chars[] = "abcdefghijklmnopqrstuvwxyz0123456789";
    int len = (int)rng.uniform_int(lo_len, hi_len);
    std::string s;
    for (int i = 0; i < len; ++i) s += chars[rng.uniform_u64(36)];
    return s;
}

Value mail_id_gen(Rng& rng) {
    static const Words tlds{"com", "org", "net", "ca", "io"};
    std::string local = random_lower(rng, 5, 9);
    std::string domain = random_lower(rng, 4, 9);
    return Value(local + "@" + domain + "." + rng.pick(tlds));
}

Value car_vin_gen(Rng& rng) { return Value(random_lower(rng, 16, 18)); }

bool car_vin_rec(const Value& v) {
    if (!v.is_string()) return false;
    const std::string& s = v.as_string();
    return s.size() >= 15 && s.size() <= 20 && lower_alnum(s, 0, s.size(), nullptr);
}

Value stock_id_gen(Rng& rng) {
    int len = (int)rng.uniform_int(1, 5);
    std::string s;
    for (int i = 0; i < len; ++i) s += (char)('A' + rng.uniform_u64(26));
    return Value(s);
}

bool stock_id_rec(const Value& v) {
    if (!v.is_string()) return false;
    const std::string& s = v.as_string();
    if (s.empty() || s.size() > 5) return false;
    for (unsigned char c : s)
        if (!std::isupper(c)) return false;
    return true;
}

bool hashtag_rec(const Value& v) {
    if (!v.is_string()) return false;
    const std::string& s = v.as_string();
    if (s.size() < 2 || s[0] != '#') return false;
    for (size_t i = 1; i < s.size(); ++i) {
        unsigned char c = s[i];
        if (!std::isalnum(c) && c != '_') return false;
    }
    return true;
}

bool username_rec(const Value& v) {
    if (!v.is_string()) return false;
    const std::string& s = v.as_string();
    if (s.size() < 3 || s.size() > 25 || !std::isalpha((unsigned char)s[0])) return false;
    for (unsigned char c : s)
        if (!std::isalnum(c) && c != '_') return false;
    return true;
}

bool parse_int_part(const std::string& s, size_t from, size_t to, int& out) {
    if (from >= to || to - from > 4) return false;
    int v = 0;
    for (size_t i = from; i < to; ++i) {
        if (!std::isdigit((unsigned char)s[i])) return false;
        v = v * 10 + (s[i] - '0');
    }
    out = v;
    return true;
}

bool date_text_ok(const std::string& s, size_t from, size_t to) {
    size_t s1 = s.find('/', from);
    if (s1 == std::string::npos || s1 >= to) return false;
    size_t s2 = s.find('/', s1 + 1);
    if (s2 == std::string::npos || s2 >= to) return false;
    int d, m, y;
    if (!parse_int_part(s, from, s1, d) || !parse_int_part(s, s1 + 1, s2, m) ||
        !parse_int_part(s, s2 + 1, to, y))
        return false;
    return d >= 1 && d <= 31 && m >= 1 && m <= 12 && y >= 1 && y <= 9999;
}

bool date_rec(const Value& v) {
    if (!v.is_string()) return false;
    return date_text_ok(v.as_string(), 0, v.as_string().size());
}

bool time_text_ok(const std::string& s, size_t from, size_t to) {
    if (to - from != 5 || s[from + 2] != ':') return false;
    int h, m;
    if (!parse_int_part(s, from, from + 2, h) || !parse_int_part(s, from + 3, to, m)) return false;
    return h >= 0 && h <= 23 && m >= 0 && m <= 59;
}

bool time_rec(const Value& v) {
    if (!v.is_string()) return false;
    return time_text_ok(v.as_string(), 0, v.as_string().size());
}

bool datetime_rec(const Value& v) {
    if (!v.is_string()) return false;
    const std::string& s = v.as_string();
    size_t sp = s.find(' ');
    if (sp == std::string::npos) return false;
    return time_text_ok(s, 0, sp) && date_text_ok(s, sp + 1, s.size());
}

std::string format_date(Rng& rng) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%d/%d/%d", (int)rng.uniform_int(1, 28),
                  (int)rng.uniform_int(1, 12), (int)rng.uniform_int(100, 2100));
    return buf;
}

Value date_gen(Rng& rng) { return Value(format_date(rng)); }

Value time_value_gen(Rng& rng) {
    char buf[8];
    std::snprintf(buf, sizeof(buf), "%02d:%02d", (int)rng.uniform_int(0, 23),
                  (int)rng.uniform_int(0, 59));
    return Value(std::string(buf));
}

Value datetime_gen(Rng& rng) {
    return Value(time_value_gen(rng).as_string() + " " + format_date(rng));
}

bool address_rec(const Value& v) {
    if (!v.is_string()) return false;
    const std::string& s = v.as_string();
    if (s.empty() || !std::isdigit((unsigned char)s[0])) return false;
    if (s.find(", ") == std::string::npos) return false;
    for (unsigned char c : s)
        if (!name_char(c) && c != ',') return false;
    return true;
}

Value address_gen(Rng& rng) {
    static const Words streets{"Maple Street", "Oak Avenue",   "Pine Lane",  "Cedar Road",
                               "Elm Drive",    "Birch Court",  "Main Street", "Lake View"};
    static const Words cities{"Springfield", "Riverton", "Fairview",  "Greenville",
                              "Bristol",     "Clinton",  "Georgetown", "Salem"};
    static const Words states{"IL", "CA", "TX", "NY", "OH", "WA", "GA", "CO"};
    char buf[96];
    std::snprintf(buf, sizeof(buf), "%d %s, %s, %s %05d, USA", (int)rng.uniform_int(1, 999),
                  rng.pick(streets).c_str(), rng.pick(cities).c_str(), rng.pick(states).c_str(),
                  (int)rng.uniform_int(10000, 99999));
    return Value(std::string(buf));
}

bool email_rec(const Value& v) {
    if (!v.is_string()) return false;
    const std::string& s = v.as_string();
    return (s.rfind("Dear ", 0) == 0 || s.rfind("Hi ", 0) == 0 || s.rfind("Hello ", 0) == 0) &&
           s.find(',') != std::string::npos;
}

Value email_gen(Rng& rng) {
    static const Words greetings{"Dear Mr. Johnson", "Dear Ms. Carter", "Hi Sarah", "Hi Tom",
                                 "Hello Alex",       "Dear Dr. Patel",  "Hi Maria", "Hello Sam"};
    static const Words bodies{
        "please find the quarterly report attached.",
        "thanks for your time yesterday. Let me know about next steps.",
        "I wanted to follow up on the invoice from last week.",
        "the meeting has been moved to Thursday afternoon.",
        "could you review the draft before Friday?",
        "just checking in about the delivery schedule.",
        "congratulations on the launch. The team is thrilled.",
        "here are the notes from this morning."};
    return Value(rng.pick(greetings) + ", " + rng.pick(bodies));
}

struct AtomSpec {
    const char* name;
    const char* description;
    RootKind root;
    std::vector<std::string> parents;
    std::function<Value(Rng&)> gen;
    std::function<bool(const Value&)> rec;
};

TypeRegistry build_registry() {
    TypeRegistry reg;

    auto add = [&](AtomSpec spec) {
        AtomDef def;
        def.name = spec.name;
        def.description = spec.description;
        def.root = spec.root;
        def.generator = std::move(spec.gen);
        def.recognizer = std::move(spec.rec);
        reg.add_atom(std::move(def), std::move(spec.parents));
    };

    const RootKind S = RootKind::Str, I = RootKind::Int, F = RootKind::Float;

    // Roots. `int` is a declared subtype of `float`: the calculators accept
    // integer operands (their bound is float), and joins of mixed numeric
    // types resolve to int before float.
    add({"string", "text value", S, {}, nullptr, nullptr});
    add({"float", "floating-point number", F, {}, nullptr, nullptr});
    add({"int", "integer", I, {"float"}, nullptr, nullptr});

    // Invented supertypes grouping the domain atoms.
    add({"proper-name", "name of a person, organization, or venue", S, {"string"}, nullptr, nullptr});
    add({"item-name", "name of a purchasable item", S, {"string"}, nullptr, nullptr});
    add({"media-genre", "genre of a media item", S, {"string"}, nullptr, nullptr});
    add({"calendar-name", "name of a calendar period", S, {"string"}, nullptr, nullptr});
    add({"text-id", "identifier made up of text", S, {"string"}, nullptr, nullptr});
    add({"num-id", "numerical identifier", I, {"int"}, nullptr, nullptr});
    add({"rating", "numerical rating of an item or service", F, {"float"}, nullptr, nullptr});
    add({"ord", "ordinal position, e.g. the n-th most recent", I, {"int"}, nullptr, nullptr});

    // --- string atoms ---
    add({"person-name", "name of a person", S, {"proper-name"},
         pick_gen({"John Doe", "Sarah Smith", "Maria Garcia", "James Wilson", "Emily Chen",
                   "David Brown", "Anna Novak", "Robert Taylor"}),
         [](const Value& v) { return title_words(v, 2); }});
    add({"actor-name", "name of an actor", S, {"person-name"},
         pick_gen({"Leonardo DiCaprio", "Meryl Streep", "Denzel Washington", "Scarlett Johansson",
                   "Tom Hanks", "Cate Blanchett", "Morgan Freeman", "Natalie Portman",
                   "Brad Pitt", "Viola Davis"}),
         [](const Value& v) { return title_words(v, 2); }});
    add({"company-name", "name of a company", S, {"proper-name"},
         pick_gen({"Apple", "Microsoft", "Amazon", "Nestle", "Siemens", "Samsung", "Intel",
                   "Target", "Boeing", "Shell"}),
         cap_phrase_rec(1)});
    add({"airline", "name of an airline", S, {"company-name"},
         pick_gen({"American Airlines", "Delta Air Lines", "United Airlines", "Lufthansa",
                   "Air France", "Qantas", "Emirates", "Ryanair"}),
         cap_phrase_rec(1)});
    add({"car-brand", "name of a car manufacturer", S, {"company-name"},
         pick_gen({"Toyota", "Ford", "Honda", "Volkswagen", "Buick", "Nissan", "Hyundai",
                   "Chevrolet", "Rolls-Royce", "Subaru"}),
         cap_phrase_rec(1)});
    add({"car-model", "name of a car model", S, {"string"},
         pick_gen({"LaCrosse", "Phantom", "Corolla", "Civic", "Mustang", "Golf", "Altima",
                   "Elantra", "Impala", "Outback"}),
         cap_phrase_rec(1)});
    add({"hotel-name", "name of a hotel", S, {"proper-name"},
         pick_gen({"The Grand Magnolia", "Skyline Retreat", "Harbor Lights Inn", "The Ivy House",
                   "Sunset Palms Resort", "The Copper Kettle", "Lakeside Manor",
                   "Golden Gate Lodge"}),
         cap_phrase_rec(1)});
    add({"restaurant-name", "name of a restaurant", S, {"proper-name"},
         pick_gen({"The Golden Spoon", "Bella Cucina", "The Rustic Table", "Saffron Garden",
                   "Blue Harbor Grill", "La Petite Maison", "The Olive Branch",
                   "Ember & Oak"}),
         cap_phrase_rec(1)});
    add({"artist-band-name", "name of a (music) band", S, {"proper-name"},
         pick_gen({"The Beatles", "Rolling Stones", "Kaiser Chiefs", "Arcade Fire", "Radiohead",
                   "Fleetwood Mac", "The Killers", "Daft Punk"}),
         cap_phrase_rec(1)});
    add({"twitter-group-name", "name of a Twitter group", S, {"proper-name"},
         pick_gen({"TechTalks", "FoodieFriends", "BookClubCentral", "FitnessFanatics",
                   "TravelTribe", "GamerGuild", "ArtLoversUnite", "ScienceSquad"}),
         cap_phrase_rec(1)});
    add({"amazon-name", "name of an Amazon item", S, {"item-name"},
         pick_gen({"Toilet Paper", "Paper Towels", "Wireless Mouse", "Desk Lamp", "Yoga Mat",
                   "Water Bottle", "Phone Charger", "Notebook Set", "Laptop Stand",
                   "Coffee Grinder"}),
         cap_phrase_rec(1)});
    add({"starbucks-item-name", "name of a Starbucks product", S, {"item-name"},
         pick_gen({"Caramel Macchiato", "Caffe Latte", "Pumpkin Spice Latte", "Flat White",
                   "Hazelnut Hot Chocolate", "Peach Green Tea Lemonade", "Cold Brew",
                   "Vanilla Sweet Cream", "Iced Americano"}),
         cap_phrase_rec(1)});
    add({"ingredient", "name of an ingredient", S, {"item-name"},
         pick_gen({"Garlic", "Onion", "Basil", "Ginger", "Cilantro", "Saffron", "Thyme",
                   "Paprika", "Lemongrass", "Rosemary"}),
         cap_phrase_rec(1)});
    add({"recipe-name", "name of a recipe", S, {"item-name"},
         pick_gen({"Spaghetti Carbonara", "Chicken Alfredo", "Tom Yum Soup", "Cinnamon Rolls",
                   "Beef Stroganoff", "Shakshuka", "Pad Thai", "Ratatouille",
                   "Mushroom Risotto"}),
         cap_phrase_rec(1)});
    add({"movie-title", "title of a movie", S, {"string"},
         pick_gen({"The Shawshank Redemption", "The Godfather", "Fight Club", "The Dark Knight",
                   "Pulp Fiction", "Toy Story", "Moana", "Zootopia", "Frozen",
                   "The Lion King", "Up", "Mad Max: Fury Road"}),
         cap_phrase_rec(1)});
    add({"movie-genre", "genre of a movie", S, {"media-genre"},
         pick_gen({"Action", "Adventure", "Comedy", "Drama", "Horror", "Romance", "Thriller",
                   "Documentary", "Animation", "Fantasy", "Science Fiction", "Mystery"}),
         cap_phrase_rec(1)});
    add({"music-genre", "genre of a song or album", S, {"media-genre"},
         pick_gen({"Rock", "Pop", "Jazz", "Classical", "Hip Hop", "Country", "Electronic",
                   "Blues", "Reggae", "Folk", "Metal", "Soul"}),
         cap_phrase_rec(1)});
    add({"month-name", "name of a month", S, {"calendar-name"},
         pick_gen({"January", "February", "March", "April", "May", "June", "July", "August",
                   "September", "October", "November", "December"}),
         member_rec({"January", "February", "March", "April", "May", "June", "July", "August",
                     "September", "October", "November", "December"})});
    add({"day-name", "name of a day of the week", S, {"calendar-name"},
         pick_gen({"Monday", "Tuesday", "Wednesday", "Thursday", "Friday", "Saturday",
                   "Sunday"}),
         member_rec({"Monday", "Tuesday", "Wednesday", "Thursday", "Friday", "Saturday",
                     "Sunday"})});
    add({"color", "color", S, {"string"},
         pick_gen({"Red", "Green", "Blue", "Yellow", "Purple", "Orange", "Black", "White",
                   "Pink", "Brown", "Gray", "Teal"}),
         cap_phrase_rec(1)});
    add({"cuisine", "name of a category of food", S, {"string"},
         pick_gen({"Italian", "Chinese", "Mexican", "Indian", "Thai", "French", "Japanese",
                   "Greek", "Spanish", "Korean", "Afghan", "Flemish"}),
         cap_phrase_rec(1)});
    add({"amazon-category", "shopping category on Amazon", S, {"string"},
         pick_gen({"Books", "Electronics", "Home & Kitchen", "Toys & Games", "Beauty",
                   "Sports & Outdoors", "Automotive", "Grocery", "Clothing", "Pet Supplies"}),
         cap_phrase_rec(1)});
    add({"amazon-condition", "condition of an Amazon item", S, {"string"},
         pick_gen({"New", "Used, Like New", "Used, Very Good", "Used, Good", "Used, Acceptable",
                   "Renewed"}),
         member_rec({"New", "Used, Like New", "Used, Very Good", "Used, Good",
                     "Used, Acceptable", "Renewed"})});
    add({"flight-status", "status of a flight", S, {"string"},
         pick_gen({"On Time", "Cancelled", "Delayed", "Boarding", "Departed", "Landed",
                   "Diverted"}),
         member_rec({"On Time", "Cancelled", "Delayed", "Boarding", "Departed", "Landed",
                     "Diverted"})});
    add({"forecast", "weather forecast", S, {"string"},
         pick_gen({"Clear", "Partly Cloudy", "Rain", "Snow", "Thunderstorms", "Overcast",
                   "Windy", "Foggy"}),
         cap_phrase_rec(1)});
    add({"formality", "tone of a text", S, {"string"},
         pick_gen({"formal", "semi-formal", "informal", "casual", "neutral"}),
         member_rec({"formal", "semi-formal", "informal", "casual", "neutral"})});
    add({"location", "geographic location", S, {"string"},
         pick_gen({"New York", "Los Angeles", "Chicago", "Houston", "Madison", "Louisville",
                   "Jakarta", "Berlin", "Paris", "Tokyo", "Sydney", "Toronto"}),
         cap_phrase_rec(1)});
    add({"address", "location of a building or plot of land", S, {"location"}, address_gen,
         address_rec});
    add({"date", "date", S, {"string"}, date_gen, date_rec});
    add({"datetime", "date and time", S, {"string"}, datetime_gen, datetime_rec});
    add({"time", "time", S, {"string"}, time_value_gen, time_rec});
    add({"email", "content of an email message", S, {"string"}, email_gen, email_rec});
    add({"mail-id", "email address", S, {"text-id"}, mail_id_gen, mail_id_rec});
    add({"car-vin", "vehicle identification number", S, {"text-id"}, car_vin_gen, car_vin_rec});
    add({"stock-id", "stock ticker symbol of a company", S, {"text-id"}, stock_id_gen,
         stock_id_rec});
    add({"twitter-hashtag", "Twitter hashtag", S, {"text-id"},
         pick_gen({"#FollowFriday", "#TechNews", "#ThrowbackThursday", "#MotivationMonday",
                   "#AdventureAwaits", "#FoodieFinds", "#TravelGoals", "#WellnessWednesday"}),
         hashtag_rec});
    add({"twitter-username", "username of a Twitter account", S, {"text-id"},
         pick_gen({"JohnDoe", "SarahSmith1", "TechGuru42", "WanderlustJane", "PixelPete",
                   "DailyFoodie", "MarathonMike", "BookwormBella"}),
         username_rec});

    // --- int atoms ---
    add({"age", "age in years", I, {"int"}, int_range_gen(1, 99), int_range_rec(0, 150)});
    add({"year", "year", I, {"int"}, int_range_gen(1000, 2100), int_range_rec(1, 9999)});
    add({"day-number", "calendar day number", I, {"ord"}, int_range_gen(1, 28),
         int_range_rec(1, 31)});
    add({"month-number", "calendar month number (1-12)", I, {"ord"}, int_range_gen(1, 12),
         int_range_rec(1, 12)});
    add({"starbucks-reward", "number of Starbucks reward points", I, {"int"},
         int_range_gen(50, 999), int_range_rec(0, 999999)});
    add({"amazon-id", "numerical ID of an Amazon item", I, {"num-id"}, int_digits_gen(12, 15),
         int_digits_rec(10, 16)});
    add({"flight-id", "numerical ID of a commercial flight", I, {"num-id"},
         int_digits_gen(13, 15), int_digits_rec(10, 16)});
    add({"hotel-id", "numerical ID of a hotel", I, {"num-id"}, int_digits_gen(10, 10),
         int_digits_rec(8, 12)});
    add({"netflix-id", "numerical ID of a movie on Netflix", I, {"num-id"},
         int_digits_gen(13, 13), int_digits_rec(10, 15)});
    add({"restaurant-id", "numerical ID of a restaurant", I, {"num-id"}, int_digits_gen(13, 14),
         int_digits_rec(10, 16)});
    add({"spotify-album-id", "numerical ID of a Spotify album", I, {"num-id"},
         int_digits_gen(10, 11), int_digits_rec(8, 16)});
    add({"spotify-playlist-id", "numerical ID of a Spotify playlist", I, {"num-id"},
         int_digits_gen(12, 12), int_digits_rec(10, 14)});
    add({"spotify-song-id", "numerical ID of a song on Spotify", I, {"num-id"},
         int_digits_gen(11, 11), int_digits_rec(9, 13)});
    add({"starbucks-item-id", "numerical ID of a Starbucks product", I, {"num-id"},
         int_digits_gen(10, 14), int_digits_rec(8, 16)});
    add({"starbucks-order-id", "numerical ID of a Starbucks order", I, {"num-id"},
         int_digits_gen(11, 13), int_digits_rec(9, 15)});
    add({"starbucks-store-id", "numerical ID of a Starbucks store", I, {"num-id"},
         int_digits_gen(12, 12), int_digits_rec(10, 14)});
    add({"twitter-comment-id", "numerical ID of a comment on a Twitter post", I, {"num-id"},
         int_digits_gen(12, 13), int_digits_rec(9, 15)});
    add({"twitter-event-id", "numerical ID of a Twitter event", I, {"num-id"},
         int_digits_gen(11, 15), int_digits_rec(9, 16)});
    add({"twitter-post-id", "numerical ID of a Twitter post", I, {"num-id"},
         int_digits_gen(11, 11), int_digits_rec(9, 14)});
    add({"uber-driver-id", "numerical ID of an Uber driver", I, {"num-id"},
         int_digits_gen(10, 12), int_digits_rec(8, 14)});
    add({"uber-ride-id", "numerical ID of an Uber ride", I, {"num-id"}, int_digits_gen(10, 14),
         int_digits_rec(8, 16)});

    // --- float atoms ---
    add({"price", "cost of an item", F, {"float"}, float_gen(1.0, 5000.0, 2), numeric_rec()});
    add({"temperature", "temperature", F, {"float"}, float_gen(-20.0, 45.0, 1), numeric_rec()});
    add({"hour-dur", "length of time (in hours)", F, {"float"}, float_gen(0.5, 12.0, 1),
         numeric_rec()});
    add({"amazon-review", "rating of an Amazon item", F, {"rating"}, float_gen(0.0, 5.0, 1),
         numeric_rec()});
    add({"hotel-rating", "rating of a hotel", F, {"rating"}, float_gen(0.0, 5.0, 1),
         numeric_rec()});
    add({"netflix-rating", "rating of a movie on Netflix", F, {"rating"}, float_gen(0.0, 5.0, 1),
         numeric_rec()});
    add({"recipe-review", "rating of a recipe", F, {"rating"}, float_gen(0.0, 5.0, 1),
         numeric_rec()});
    add({"uber-driver-rating", "rating of an Uber driver", F, {"rating"}, float_gen(0.0, 5.0, 1),
         numeric_rec()});

    reg.finalize();
    return reg;
}

}  // namespace

const TypeRegistry& builtin_registry() {
    static TypeRegistry reg = build_registry();
    return reg;
}

}  // namespace randomworld
