#include "prodcat/synthgen.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <numeric>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "prodcat/csv.hpp"
#include "prodcat/rng.hpp"

namespace prodcat {
namespace {

// Themed keyword stems, one row per default category. Deliberately free of
// cross-category word sharing so generated categories stay separable.
constexpr std::array<std::array<const char*, 8>, 34> kCategoryKeywords = {{
    {"carding", "track2", "magstripe", "embosser", "bins", "skimmer", "plastics", "cloning"},
    {"paypal", "balance", "transfer", "verified", "invoice", "chargeback", "payout", "merchant"},
    {"cashout", "cvv", "fullz", "prepaid", "giftpin", "atm", "withdraw", "cashier"},
    {"pgp", "keypair", "gnupg", "keyring", "armored", "pubkey", "cipher", "revocation"},
    {"netflix", "streaming", "subscription", "hdplan", "profiles", "episodes", "renewals", "uhd"},
    {"toolkit", "framework", "automation", "keygen", "loader", "builder", "crypter", "multitool"},
    {"dumps", "sqlfile", "database", "combo", "leakpack", "breach", "records", "rawdata"},
    {"linux", "debian", "kali", "bash", "sudo", "kernel", "distro", "opensource"},
    {"email", "smtp", "mailer", "inbox", "spambase", "bulkmail", "sender", "extractor"},
    {"firewall", "scanner", "nmap", "portscan", "packets", "sniffer", "netmon", "audit"},
    {"ebay", "auction", "feedback", "listings", "stealth", "seller", "bidding", "ratings"},
    {"amazon", "prime", "refund", "orders", "fulfillment", "dropship", "vouchers", "fba"},
    {"bitcoin", "btc", "wallet", "blockchain", "mixer", "escrow", "satoshi", "mining"},
    {"links", "directory", "onion", "bookmarks", "catalog", "urls", "hidden", "webring"},
    {"banking", "accounts", "logins", "swift", "iban", "routing", "payroll", "statements"},
    {"pos", "terminals", "pinpad", "checkout", "swipe", "receipt", "tillbox", "barcode"},
    {"vpn", "openvpn", "tunnel", "proxy", "anonymity", "nolog", "socks5", "killswitch"},
    {"botnet", "bots", "zombies", "ddos", "stresser", "booter", "irc", "cnc"},
    {"invitation", "membership", "recruit", "crew", "insiders", "forum", "vip", "clan"},
    {"rat", "remote", "trojan", "backdoor", "hvnc", "stub", "persistence", "webcam"},
    {"browser", "chrome", "firefox", "cookies", "extension", "useragent", "fingerprint", "tabs"},
    {"lockpick", "rfid", "badge", "duplicator", "soldering", "badusb", "implant", "keyfob"},
    {"password", "hashcat", "wordlist", "bruteforce", "rainbow", "hashes", "cracker", "salts"},
    {"smartphone", "mobile", "imei", "jailbreak", "flashing", "firmware", "devices", "basebands"},
    {"wifi", "wireless", "wpa2", "handshake", "deauth", "beacons", "hotspot", "antenna"},
    {"phishing", "scampage", "landing", "letters", "fakepage", "lure", "decoy", "templates"},
    {"exploit", "zeroday", "payload", "shellcode", "vulnerability", "rce", "injector", "poc"},
    {"virus", "antivirus", "malware", "fud", "obfuscator", "signature", "detection", "polymorphic"},
    {"mitm", "arpspoof", "dns", "hijack", "gateway", "intercept", "lan", "subnet"},
    {"rdp", "server", "vnc", "admin", "dedicated", "vps", "credentials", "uptime"},
    {"android", "apk", "playstore", "rooting", "magisk", "emulator", "dalvik", "lineage"},
    {"keylogger", "keystrokes", "logger", "capture", "clipboard", "screenshots", "hooking", "exfil"},
    {"windows", "registry", "powershell", "activation", "license", "win10", "dll", "patcher"},
    {"facebook", "likes", "followers", "socialmedia", "messenger", "friends", "likebot", "timeline"},
}};

// Market-speak fillers drawn across all categories when keyword_overlap_rate
// fires.
constexpr std::array<const char*, 16> kSharedPool = {
    "free",    "instant", "delivery", "cheap", "premium", "lifetime", "access", "guide",
    "tutorial", "private", "fresh",    "valid", "bundle",  "method",   "update", "working",
};

std::string letter_code(std::size_t v) {
    std::string code;
    do {
        code.insert(code.begin(), static_cast<char>('a' + v % 26));
        v /= 26;
    } while (v > 0);
    if (code.size() < 2) code.insert(code.begin(), 'a');
    return code;
}

std::string zero_pad(std::size_t v, std::size_t width) {
    std::string s = std::to_string(v);
    if (s.size() < width) s.insert(s.begin(), width - s.size(), '0');
    return s;
}

std::string category_name(std::size_t c) {
    const auto& names = default_taxonomy();
    if (c < names.size()) return names[c];
    return "category-" + std::to_string(c + 1);
}

// Activity is heavy-tailed: squaring the uniform variate piles most
// listings onto the low vendor indices.
std::size_t skewed_vendor(Rng& rng, std::size_t n_vendors) {
    const double u = rng.uniform01();
    return std::min(n_vendors - 1, static_cast<std::size_t>(u * u * static_cast<double>(n_vendors)));
}

double round_to(double x, double unit) { return std::round(x / unit) * unit; }

void validate(const SynthConfig& config) {
    if (config.n_categories == 0) throw std::invalid_argument("n_categories must be positive");
    if (config.keywords_per_category == 0)
        throw std::invalid_argument("keywords_per_category must be positive");
    if (config.titles_per_category == 0)
        throw std::invalid_argument("titles_per_category must be positive");
    if (config.n_vendors == 0) throw std::invalid_argument("n_vendors must be positive");
    if (config.n_markets == 0) throw std::invalid_argument("n_markets must be positive");
    const auto in_unit = [](double x) { return x >= 0.0 && x < 1.0; };
    if (!in_unit(config.cross_list_rate))
        throw std::invalid_argument("cross_list_rate must be in [0, 1)");
    if (!in_unit(config.keyword_overlap_rate))
        throw std::invalid_argument("keyword_overlap_rate must be in [0, 1)");
    if (!in_unit(config.noise_token_rate))
        throw std::invalid_argument("noise_token_rate must be in [0, 1)");
}

}  // namespace

const std::vector<std::string>& default_taxonomy() {
    static const std::vector<std::string> names = {
        "Carding", "PayPal-related", "Cashing Credit Cards", "PGP", "Netflix-related",
        "Hacking Tools - General", "Dumps - General", "Linux-related", "Email Hacking Tools",
        "Network Security Tools", "Ebay-related", "Amazon-related", "Bitcoin", "Links (Lists)",
        "Banking", "Point of Sale", "VPN", "Botnet", "Hacking Groups Invitation", "RATs",
        "Browser-related", "Physical Layer Hacking", "Password Cracking", "Smartphone - General",
        "Wireless Hacking", "Phishing", "Exploit Kits", "Viruses/Counter AntiVirus",
        "Network Layer Hacking", "RDP Servers", "Android-related", "Keyloggers", "Windows-related",
        "Facebook-related",
    };
    return names;
}

std::vector<std::string> category_keywords(const SynthConfig& config, std::size_t category) {
    if (category >= config.n_categories) throw std::invalid_argument("category index out of range");
    std::vector<std::string> pool;
    pool.reserve(config.keywords_per_category);
    for (std::size_t i = 0; i < config.keywords_per_category; i++) {
        std::string word;
        if (category < kCategoryKeywords.size()) {
            const auto& base = kCategoryKeywords[category];
            word = base[i % base.size()];
            if (i >= base.size()) word += std::to_string(i / base.size() + 1);
        } else {
            // synthetic stems beyond the default taxonomy
            word = "topic" + letter_code(category) + letter_code(i);
        }
        pool.push_back(std::move(word));
    }
    return pool;
}

double expected_unique_fraction(const SynthConfig& config) {
    const double r = config.cross_list_rate;
    const double m = static_cast<double>(config.n_markets);
    if (r <= 0.0) return 1.0;
    if (r >= 1.0) return 1.0 / m;
    return (1.0 - r) / (1.0 - std::pow(r, m));
}

SynthCorpus generate_corpus(const SynthConfig& config) {
    validate(config);
    Rng rng(config.rng_seed);

    std::vector<std::string> markets(config.n_markets);
    for (std::size_t m = 0; m < markets.size(); m++) markets[m] = "market-" + zero_pad(m + 1, 2);
    std::vector<std::string> vendors(config.n_vendors);
    for (std::size_t v = 0; v < vendors.size(); v++) vendors[v] = "vendor-" + zero_pad(v + 1, 3);

    SynthCorpus corpus;
    std::unordered_set<std::string> seen_titles;
    std::size_t listing_counter = 0;
    std::size_t dedup_counter = 0;

    const auto gibberish = [&rng]() {
        std::string word;
        const std::size_t len = 4 + rng.pick(5);
        for (std::size_t i = 0; i < len; i++)
            word.push_back(static_cast<char>('a' + rng.pick(26)));
        return word;
    };

    const auto emit_listing = [&](const std::string& title, const std::string& category,
                                  std::size_t market, std::size_t vendor) {
        ProductRecord r;
        r.listing_id = "synth-" + zero_pad(++listing_counter, 6);
        r.market = markets[market];
        r.vendor = vendors[vendor];
        r.title = title;
        if (rng.bernoulli(0.5)) r.description = "see vendor page for terms and delivery";
        if (rng.bernoulli(0.9)) {
            r.price = round_to(10.0 + rng.uniform01() * 490.0, 0.01);
            r.currency = "USD";
        }
        if (rng.bernoulli(0.7)) r.rating = round_to(1.0 + rng.uniform01() * 4.0, 0.1);
        if (rng.bernoulli(0.8))
            r.posted_date = std::to_string(2015 + rng.pick(2)) + "-" + zero_pad(1 + rng.pick(12), 2) +
                            "-" + zero_pad(1 + rng.pick(28), 2);
        corpus.records.push_back(std::move(r));
        corpus.record_category.push_back(category);
    };

    for (std::size_t c = 0; c < config.n_categories; c++) {
        const std::vector<std::string> pool = category_keywords(config, c);
        const std::string name = category_name(c);

        for (std::size_t t = 0; t < config.titles_per_category; t++) {
            std::string title;
            for (int attempt = 0; attempt < 64; attempt++) {
                const std::size_t n_keywords = 2 + rng.pick(5);
                std::vector<std::string> parts;
                for (std::size_t w = 0; w < n_keywords; w++) {
                    if (config.keyword_overlap_rate > 0.0 && rng.bernoulli(config.keyword_overlap_rate))
                        parts.push_back(kSharedPool[rng.pick(kSharedPool.size())]);
                    else
                        parts.push_back(pool[rng.pick(pool.size())]);
                    if (config.noise_token_rate > 0.0 && rng.bernoulli(config.noise_token_rate))
                        parts.push_back(gibberish());
                }
                title.clear();
                for (const std::string& p : parts) {
                    if (!title.empty()) title += ' ';
                    title += p;
                }
                if (!seen_titles.contains(title)) break;
            }
            while (seen_titles.contains(title)) title += " " + letter_code(dedup_counter++);
            seen_titles.insert(title);

            corpus.product_title.push_back(title);
            corpus.product_category.push_back(name);

            const std::size_t home_market = rng.pick(config.n_markets);
            const std::size_t home_vendor = skewed_vendor(rng, config.n_vendors);
            emit_listing(title, name, home_market, home_vendor);

            // truncated-geometric cross-listing into distinct other markets
            std::size_t extras = 0;
            while (extras < config.n_markets - 1 && rng.bernoulli(config.cross_list_rate)) extras++;
            if (extras > 0) {
                std::vector<std::size_t> others;
                others.reserve(config.n_markets - 1);
                for (std::size_t m = 0; m < config.n_markets; m++)
                    if (m != home_market) others.push_back(m);
                for (std::size_t i = 0; i < extras; i++) {
                    std::swap(others[i], others[i + rng.pick(others.size() - i)]);
                    const std::size_t vendor =
                        rng.bernoulli(0.7) ? home_vendor : skewed_vendor(rng, config.n_vendors);
                    emit_listing(title, name, others[i], vendor);
                }
            }
        }
    }
    return corpus;
}

std::vector<LabeledTitle> sample_labeled_titles(const SynthCorpus& corpus, std::size_t n,
                                                std::uint64_t rng_seed) {
    if (n == 0) return {};
    if (n > corpus.product_title.size())
        throw std::invalid_argument("cannot sample " + std::to_string(n) + " of " +
                                    std::to_string(corpus.product_title.size()) + " products");

    // product indices per category, in first-appearance category order
    std::vector<std::string> order;
    std::unordered_map<std::string, std::vector<std::size_t>> by_category;
    for (std::size_t i = 0; i < corpus.product_title.size(); i++) {
        const std::string& cat = corpus.product_category[i];
        auto [it, inserted] = by_category.try_emplace(cat);
        if (inserted) order.push_back(cat);
        it->second.push_back(i);
    }

    // proportional quotas by largest remainder
    const double total = static_cast<double>(corpus.product_title.size());
    std::vector<std::size_t> quota(order.size(), 0);
    std::vector<std::pair<double, std::size_t>> remainders;
    std::size_t assigned = 0;
    for (std::size_t c = 0; c < order.size(); c++) {
        const double exact =
            static_cast<double>(n) * static_cast<double>(by_category[order[c]].size()) / total;
        quota[c] = static_cast<std::size_t>(exact);
        assigned += quota[c];
        remainders.push_back({exact - static_cast<double>(quota[c]), c});
    }
    std::stable_sort(remainders.begin(), remainders.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    for (std::size_t i = 0; assigned < n; i = (i + 1) % remainders.size()) {
        std::size_t& q = quota[remainders[i].second];
        if (q < by_category[order[remainders[i].second]].size()) {
            q++;
            assigned++;
        }
    }

    Rng rng(rng_seed);
    std::vector<LabeledTitle> sample;
    sample.reserve(n);
    for (std::size_t c = 0; c < order.size(); c++) {
        std::vector<std::size_t>& candidates = by_category[order[c]];
        for (std::size_t i = 0; i < quota[c]; i++) {
            std::swap(candidates[i], candidates[i + rng.pick(candidates.size() - i)]);
            sample.push_back({corpus.product_title[candidates[i]], order[c]});
        }
    }
    return sample;
}

void write_truth_csv(const std::filesystem::path& path, const SynthCorpus& corpus) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << "title,category\n";
    for (std::size_t i = 0; i < corpus.product_title.size(); i++)
        out << csv::join({corpus.product_title[i], corpus.product_category[i]}) << '\n';
}

void write_seeds_csv(const std::filesystem::path& path, const std::vector<LabeledTitle>& seeds) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << "title,label\n";
    for (const LabeledTitle& s : seeds) out << csv::join({s.title, s.label}) << '\n';
}

std::vector<LabeledTitle> load_seeds_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open seeds file: " + path.string());

    std::string line;
    std::size_t line_no = 0;
    std::size_t title_col = 0;
    std::size_t label_col = 0;
    std::vector<LabeledTitle> seeds;
    while (std::getline(in, line)) {
        line_no++;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> fields;
        try {
            fields = csv::parse_line(line);
        } catch (const std::exception& e) {
            throw std::runtime_error(std::string(e.what()) + " at line " + std::to_string(line_no));
        }
        if (line_no == 1) {
            const auto find_col = [&](std::initializer_list<const char*> names) -> std::size_t {
                for (const char* name : names) {
                    auto it = std::find(fields.begin(), fields.end(), name);
                    if (it != fields.end()) return static_cast<std::size_t>(it - fields.begin());
                }
                throw std::runtime_error("seeds file needs title and label/category columns");
            };
            title_col = find_col({"title"});
            label_col = find_col({"label", "category"});
            continue;
        }
        if (fields.size() <= std::max(title_col, label_col))
            throw std::runtime_error("short row at line " + std::to_string(line_no));
        if (fields[title_col].empty())
            throw std::runtime_error("empty title at line " + std::to_string(line_no));
        if (fields[label_col].empty())
            throw std::runtime_error("empty label at line " + std::to_string(line_no));
        seeds.push_back({fields[title_col], fields[label_col]});
    }
    if (line_no == 0) throw std::runtime_error("seeds file is empty: " + path.string());
    return seeds;
}

}  // namespace prodcat
