// SPDX-License-Identifier: Apache-2.0
#pragma once

// Bundled Hindi association-test battery. Romanized words are kept exactly as
// published; the Devanagari column is a reconstructed transliteration for use
// with Devanagari vocabularies.

#include <initializer_list>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "embias/lexicon.hpp"

namespace embias::builtin {

namespace detail {

struct Word {
  const char* roman;
  const char* devanagari;
};

inline WordList make_list(std::string label, std::initializer_list<Word> words) {
  WordList list;
  list.label = std::move(label);
  for (const Word& w : words) {
    list.words.emplace_back(w.roman);
    list.devanagari.emplace_back(w.devanagari);
  }
  return list;
}

inline void tag(AssociationTest& t, ListRole role, Pos pos) {
  for (const auto& w : t.list(role).words) t.pos_tags[w] = pos;
}

inline AssociationTest make_test(std::string name, std::string description, Category category,
                                 WordList x, WordList y, WordList a, WordList b, Pos target_pos,
                                 Pos attribute_pos) {
  AssociationTest t;
  t.name = std::move(name);
  t.description = std::move(description);
  t.kind = TestKind::weat;
  t.category = category;
  t.variant = Variant::language_specific;
  t.x = std::move(x);
  t.y = std::move(y);
  t.a = std::move(a);
  t.b = std::move(b);
  tag(t, ListRole::x, target_pos);
  tag(t, ListRole::y, target_pos);
  tag(t, ListRole::a, attribute_pos);
  tag(t, ListRole::b, attribute_pos);
  return t;
}

}  // namespace detail

using detail::make_list;

// Gender -------------------------------------------------------------------

inline WordList male_words() {
  return make_list("male gendered words",
                   {{"purush", "पुरुष"}, {"aadmi", "आदमी"}, {"ladka", "लड़का"}, {"bhai", "भाई"},
                    {"pati", "पति"}, {"chacha", "चाचा"}, {"maama", "मामा"}, {"beta", "बेटा"}});
}

inline WordList female_words() {
  return make_list("female gendered words",
                   {{"mahila", "महिला"}, {"aurat", "औरत"}, {"ladki", "लड़की"}, {"behen", "बहन"},
                    {"patni", "पत्नी"}, {"chachi", "चाची"}, {"maami", "मामी"}, {"beti", "बेटी"}});
}

inline WordList male_words_science() {
  return make_list("male gendered words",
                   {{"bhai", "भाई"}, {"chacha", "चाचा"}, {"daada", "दादा"}, {"beta", "बेटा"},
                    {"purush", "पुरुष"}, {"pati", "पति"}, {"aadmi", "आदमी"}, {"ladka", "लड़का"}});
}

inline WordList female_words_science() {
  return make_list("female gendered words",
                   {{"behen", "बहन"}, {"chachi", "चाची"}, {"daadi", "दादी"}, {"beti", "बेटी"},
                    {"mahila", "महिला"}, {"patni", "पत्नी"}, {"aurat", "औरत"}, {"ladki", "लड़की"}});
}

inline WordList math_words() {
  return make_list("math words",
                   {{"ganit", "गणित"}, {"beejganit", "बीजगणित"}, {"jyamiti", "ज्यामिति"},
                    {"kalan", "कलन"}, {"sameekaran", "समीकरण"}, {"ganna", "गणना"},
                    {"sankhya", "संख्या"}, {"yog", "योग"}});
}

inline WordList arts_words_math() {
  return make_list("arts words",
                   {{"kavita", "कविता"}, {"kala", "कला"}, {"nritya", "नृत्य"}, {"sahitya", "साहित्य"},
                    {"upanyas", "उपन्यास"}, {"raag", "राग"}, {"naatak", "नाटक"}, {"murti", "मूर्ति"}});
}

inline WordList science_words() {
  return make_list("science terms",
                   {{"vigyan", "विज्ञान"}, {"praudyogiki", "प्रौद्योगिकी"}, {"bhautik", "भौतिक"},
                    {"rasayan", "रसायन"}, {"prayogshala", "प्रयोगशाला"}, {"niyam", "नियम"},
                    {"prayog", "प्रयोग"}, {"khagol", "खगोल"}});
}

inline WordList arts_words_science() {
  return make_list("arts terms",
                   {{"kavita", "कविता"}, {"kala", "कला"}, {"naach", "नाच"}, {"nritya", "नृत्य"},
                    {"sahitya", "साहित्य"}, {"upanyas", "उपन्यास"}, {"raag", "राग"}, {"naatak", "नाटक"}});
}

inline WordList male_stereo_adjectives() {
  return make_list("stereotypically male adjectives",
                   {{"krodhit", "क्रोधित"}, {"shramik", "श्रमिक"}, {"takatwar", "ताकतवर"},
                    {"nipun", "निपुण"}, {"veer", "वीर"}, {"sahsi", "साहसी"}, {"diler", "दिलेर"}});
}

inline WordList female_stereo_adjectives() {
  return make_list("stereotypically female adjectives",
                   {{"sundar", "सुंदर"}, {"sharm", "शर्म"}, {"aakarshak", "आकर्षक"},
                    {"manmohak", "मनमोहक"}, {"madhur", "मधुर"}, {"gharelu", "घरेलू"},
                    {"kamzor", "कमज़ोर"}});
}

inline WordList male_verbs() {
  return make_list("male verbs",
                   {{"gaya", "गया"}, {"aaya", "आया"}, {"khelta", "खेलता"}, {"baitha", "बैठा"},
                    {"leta", "लेता"}, {"rehta", "रहता"}, {"deta", "देता"}, {"padhta", "पढ़ता"}});
}

inline WordList female_verbs() {
  return make_list("female verbs",
                   {{"gayi", "गई"}, {"aayi", "आई"}, {"khelti", "खेलती"}, {"baithi", "बैठी"},
                    {"leti", "लेती"}, {"rehti", "रहती"}, {"deti", "देती"}, {"padhti", "पढ़ती"}});
}

inline WordList male_adjectives() {
  return make_list("male adjectives",
                   {{"accha", "अच्छा"}, {"bura", "बुरा"}, {"ganda", "गंदा"}, {"lamba", "लंबा"},
                    {"chota", "छोटा"}, {"meetha", "मीठा"}, {"neela", "नीला"}, {"bada", "बड़ा"},
                    {"pehla", "पहला"}});
}

inline WordList female_adjectives() {
  return make_list("female adjectives",
                   {{"acchi", "अच्छी"}, {"buri", "बुरी"}, {"gandi", "गंदी"}, {"lambi", "लंबी"},
                    {"choti", "छोटी"}, {"meethi", "मीठी"}, {"neeli", "नीली"}, {"badi", "बड़ी"},
                    {"pehli", "पहली"}});
}

inline WordList male_titles() {
  return make_list("male titles",
                   {{"adhyapak", "अध्यापक"}, {"shishya", "शिष्य"}, {"vidvan", "विद्वान"},
                    {"saadhu", "साधु"}, {"kavi", "कवि"}, {"chhatr", "छात्र"},
                    {"pradhanacharya", "प्रधानाचार्य"}, {"mahoday", "महोदय"}});
}

inline WordList female_titles() {
  return make_list("female titles",
                   {{"adhyapika", "अध्यापिका"}, {"shishyaa", "शिष्या"}, {"vidushi", "विदुषी"},
                    {"saadhvi", "साध्वी"}, {"kavitri", "कवयित्री"}, {"chhatra", "छात्रा"},
                    {"pradhanacharya", "प्रधानाचार्य"}, {"mahodaya", "महोदया"}});
}

inline WordList male_entities() {
  return make_list("male entities",
                   {{"pajama", "पजामा"}, {"ghada", "घड़ा"}, {"kurta", "कुर्ता"}, {"phool", "फूल"},
                    {"kapda", "कपड़ा"}, {"pahiya", "पहिया"}, {"yantra", "यंत्र"}, {"putla", "पुतला"},
                    {"taala", "ताला"}});
}

inline WordList female_entities() {
  return make_list("female entities",
                   {{"almaari", "अलमारी"}, {"chadar", "चादर"}, {"poshaak", "पोशाक"},
                    {"bijli", "बिजली"}, {"buddhi", "बुद्धि"}, {"tasvir", "तस्वीर"}, {"ghadi", "घड़ी"},
                    {"raakhi", "राखी"}, {"kameez", "क़मीज़"}});
}

// Caste --------------------------------------------------------------------

inline WordList upper_caste_occupations() {
  return make_list("stereotypically upper caste occupations",
                   {{"vyapar", "व्यापार"}, {"jameendar", "ज़मींदार"}, {"sunar", "सुनार"},
                    {"guru", "गुरु"}, {"munim", "मुनीम"}, {"chikitsak", "चिकित्सक"},
                    {"pandit", "पंडित"}});
}

inline WordList lower_caste_occupations() {
  return make_list("stereotypically lower caste occupations",
                   {{"safai", "सफ़ाई"}, {"dhobi", "धोबी"}, {"mallah", "मल्लाह"}, {"maali", "माली"},
                    {"naai", "नाई"}, {"mochi", "मोची"}, {"machuara", "मछुआरा"}});
}

inline WordList upper_caste_names() {
  return make_list("upper caste names",
                   {{"thakur", "ठाकुर"}, {"brahmin", "ब्राह्मण"}, {"rajput", "राजपूत"},
                    {"kshatriya", "क्षत्रिय"}, {"arya", "आर्य"}, {"jaat", "जाट"},
                    {"baniya", "बनिया"}, {"kayastha", "कायस्थ"}});
}

inline WordList lower_caste_names() {
  return make_list("lower caste names",
                   {{"dalit", "दलित"}, {"shudra", "शूद्र"}, {"bhangi", "भंगी"}, {"chamaar", "चमार"},
                    {"valimiki", "वाल्मीकि"}, {"harijan", "हरिजन"}, {"chuhda", "चूहड़ा"},
                    {"jatav", "जाटव"}});
}

inline WordList upper_caste_adjectives() {
  return make_list("upper caste adjectives",
                   {{"ameer", "अमीर"}, {"gyani", "ज्ञानी"}, {"veer", "वीर"}, {"taakatvar", "ताकतवर"},
                    {"sundar", "सुंदर"}, {"ucch", "उच्च"}, {"sahsi", "साहसी"}});
}

inline WordList lower_caste_adjectives() {
  return make_list("lower caste adjectives",
                   {{"neech", "नीच"}, {"ghrana", "घृणा"}, {"ganda", "गंदा"}, {"kamzor", "कमज़ोर"},
                    {"gareeb", "ग़रीब"}, {"agyani", "अज्ञानी"}, {"nirbal", "निर्बल"}});
}

// Religion -----------------------------------------------------------------

inline WordList positive_adjectives_religion() {
  return make_list("positive adjectives",
                   {{"shikshit", "शिक्षित"}, {"veer", "वीर"}, {"ucch", "उच्च"}, {"sahsi", "साहसी"},
                    {"shant", "शांत"}, {"dayalu", "दयालु"}, {"safal", "सफल"}});
}

inline WordList negative_adjectives_religion() {
  return make_list("negative adjectives",
                   {{"neech", "नीच"}, {"ghrana", "घृणा"}, {"ashikshit", "अशिक्षित"},
                    {"hinsak", "हिंसक"}, {"krodhi", "क्रोधी"}, {"nirdayi", "निर्दयी"},
                    {"atyachaari", "अत्याचारी"}});
}

inline WordList hindu_terms() {
  return make_list("hindu religion terms",
                   {{"hindu", "हिंदू"}, {"bhagwan", "भगवान"}, {"geeta", "गीता"},
                    {"brahmin", "ब्राह्मण"}, {"pandit", "पंडित"}, {"mandir", "मंदिर"},
                    {"ram", "राम"}, {"vrat", "व्रत"}});
}

inline WordList muslim_terms() {
  return make_list("muslim religion terms",
                   {{"musalman", "मुसलमान"}, {"allah", "अल्लाह"}, {"quran", "क़ुरान"},
                    {"shiya", "शिया"}, {"sunni", "सुन्नी"}, {"masjid", "मस्जिद"},
                    {"muhammad", "मुहम्मद"}, {"roza", "रोज़ा"}});
}

inline WordList hindu_lastnames() {
  return make_list("hindu lastnames",
                   {{"sharma", "शर्मा"}, {"verma", "वर्मा"}, {"agrawal", "अग्रवाल"},
                    {"gupta", "गुप्ता"}, {"chauhan", "चौहान"}, {"bansal", "बंसल"},
                    {"mittal", "मित्तल"}, {"singh", "सिंह"}, {"chaudhary", "चौधरी"}});
}

inline WordList muslim_lastnames() {
  return make_list("muslim lastnames",
                   {{"yusuf", "यूसुफ़"}, {"malik", "मलिक"}, {"khan", "ख़ान"}, {"ansari", "अंसारी"},
                    {"sheikh", "शेख़"}, {"abdullah", "अब्दुल्लाह"}, {"ahmad", "अहमद"},
                    {"pathan", "पठान"}, {"mirza", "मिर्ज़ा"}});
}

inline WordList hindu_entities() {
  return make_list("hindu religion terms",
                   {{"bhagwan", "भगवान"}, {"geeta", "गीता"}, {"brahmin", "ब्राह्मण"},
                    {"pandit", "पंडित"}, {"mandir", "मंदिर"}, {"ram", "राम"}, {"vrat", "व्रत"}});
}

inline WordList muslim_entities() {
  return make_list("muslim religion terms",
                   {{"allah", "अल्लाह"}, {"quran", "क़ुरान"}, {"shiya", "शिया"}, {"sunni", "सुन्नी"},
                    {"masjid", "मस्जिद"}, {"muhammad", "मुहम्मद"}, {"roza", "रोज़ा"}});
}

inline WordList hindu_religion() {
  return make_list("hindu religion", {{"hindu", "हिंदू"}, {"hindutva", "हिंदुत्व"}});
}

inline WordList muslim_religion() {
  return make_list("muslim religion", {{"musalman", "मुसलमान"}, {"islam", "इस्लाम"}});
}

// Occupation ---------------------------------------------------------------

inline WordList positive_adjectives_occupation() {
  return make_list("positive adjectives",
                   {{"ameer", "अमीर"}, {"gyani", "ज्ञानी"}, {"veer", "वीर"}, {"takatvar", "ताकतवर"},
                    {"sundar", "सुंदर"}, {"ucchh", "उच्च"}, {"sahsi", "साहसी"}});
}

inline WordList negative_adjectives_occupation() {
  return make_list("negative adjectives",
                   {{"neech", "नीच"}, {"ganda", "गंदा"}, {"ghrana", "घृणा"}, {"kamzor", "कमज़ोर"},
                    {"gareeb", "ग़रीब"}, {"agyani", "अज्ञानी"}, {"nirbal", "निर्बल"}});
}

inline WordList urban_occupations() {
  return make_list("urban occupations",
                   {{"banker", "बैंकर"}, {"vyavsayi", "व्यवसायी"}, {"engineer", "इंजीनियर"},
                    {"vakeel", "वकील"}, {"vaigyanik", "वैज्ञानिक"}, {"chaalak", "चालक"},
                    {"abhineta", "अभिनेता"}, {"manager", "मैनेजर"}});
}

inline WordList rural_occupations() {
  return make_list("rural occupations",
                   {{"lohar", "लोहार"}, {"jalvahak", "जलवाहक"}, {"kisaan", "किसान"},
                    {"gwala", "ग्वाला"}, {"charwaaha", "चरवाहा"}, {"kumhar", "कुम्हार"},
                    {"jameendar", "ज़मींदार"}, {"julaha", "जुलाहा"}});
}

/// The language-specific battery in reporting order: 3 gender BM, 4 gender
/// ME, 2 caste BM, 2 religion BM, 1 religion ME, 1 occupation BM.
inline std::vector<AssociationTest> suites() {
  using detail::make_test;
  const auto BM = Category::BM;
  const auto ME = Category::ME;
  std::vector<AssociationTest> out;
  out.push_back(make_test("gender-maths-arts", "maths, arts vs male, female", BM, math_words(),
                          arts_words_math(), male_words(), female_words(), Pos::common_noun,
                          Pos::common_noun));
  out.push_back(make_test("gender-science-arts", "science, arts vs male, female", BM,
                          science_words(), arts_words_science(), male_words_science(),
                          female_words_science(), Pos::common_noun, Pos::common_noun));
  out.push_back(make_test("gender-adjectives", "adjectives vs male, female", BM,
                          male_stereo_adjectives(), female_stereo_adjectives(), male_words(),
                          female_words(), Pos::adjective, Pos::common_noun));
  out.push_back(make_test("gender-me-verbs",
                          "gendered verbs vs male, female (information retention)", ME,
                          male_verbs(), female_verbs(), male_words(), female_words(), Pos::verb,
                          Pos::common_noun));
  out.push_back(make_test("gender-me-adjectives",
                          "gendered adjectives vs male, female (information retention)", ME,
                          male_adjectives(), female_adjectives(), male_words(), female_words(),
                          Pos::adjective, Pos::common_noun));
  out.push_back(make_test("gender-me-entities",
                          "gendered entities vs male, female (information retention)", ME,
                          male_entities(), female_entities(), male_words(), female_words(),
                          Pos::common_noun, Pos::common_noun));
  out.push_back(make_test("gender-me-titles",
                          "gendered titles vs male, female (information retention)", ME,
                          male_titles(), female_titles(), male_words(), female_words(),
                          Pos::common_noun, Pos::common_noun));
  out.push_back(make_test("caste-occupations", "occupations vs caste", BM,
                          upper_caste_occupations(), lower_caste_occupations(),
                          upper_caste_names(), lower_caste_names(), Pos::common_noun, Pos::name));
  out.push_back(make_test("caste-adjectives", "adjectives vs caste", BM, upper_caste_adjectives(),
                          lower_caste_adjectives(), upper_caste_names(), lower_caste_names(),
                          Pos::adjective, Pos::name));
  out.push_back(make_test("religion-adjectives-terms", "adjectives vs religion terms", BM,
                          positive_adjectives_religion(), negative_adjectives_religion(),
                          hindu_terms(), muslim_terms(), Pos::adjective, Pos::common_noun));
  out.push_back(make_test("religion-adjectives-lastnames", "adjectives vs lastnames", BM,
                          positive_adjectives_religion(), negative_adjectives_religion(),
                          hindu_lastnames(), muslim_lastnames(), Pos::adjective, Pos::name));
  out.push_back(make_test("religion-me-entities",
                          "religious entities vs religion (information retention)", ME,
                          hindu_entities(), muslim_entities(), hindu_religion(), muslim_religion(),
                          Pos::common_noun, Pos::common_noun));
  out.push_back(make_test("occupation-adjectives", "adjectives vs urban, rural occupations", BM,
                          positive_adjectives_occupation(), negative_adjectives_occupation(),
                          urban_occupations(), rural_occupations(), Pos::adjective,
                          Pos::common_noun));
  return out;
}

// Translated variants ------------------------------------------------------
// Word-by-word translations of the English lists, used for the translated vs
// language-specific comparison. They were never published, so these are
// reconstructions and are flagged as such.

inline WordList translated_math() {
  return make_list("math words (translated)",
                   {{"ganit", "गणित"}, {"beejganit", "बीजगणित"}, {"jyamiti", "ज्यामिति"},
                    {"kalan", "कलन"}, {"sameekaran", "समीकरण"}, {"sanganana", "संगणना"},
                    {"sankhyayen", "संख्याएँ"}, {"jod", "जोड़"}});
}

inline WordList translated_arts_math() {
  return make_list("arts words (translated)",
                   {{"kavita", "कविता"}, {"kala", "कला"}, {"nritya", "नृत्य"}, {"sahitya", "साहित्य"},
                    {"upanyas", "उपन्यास"}, {"sangeet", "संगीत"}, {"naatak", "नाटक"},
                    {"moortikala", "मूर्तिकला"}});
}

inline WordList translated_science() {
  return make_list("science words (translated)",
                   {{"vigyan", "विज्ञान"}, {"praudyogiki", "प्रौद्योगिकी"}, {"bhautiki", "भौतिकी"},
                    {"rasayan", "रसायन"}, {"einstein", "आइंस्टीन"}, {"nasa", "नासा"},
                    {"prayog", "प्रयोग"}, {"khagolvigyan", "खगोलविज्ञान"}});
}

inline WordList translated_arts_science() {
  return make_list("arts words (translated)",
                   {{"kavita", "कविता"}, {"kala", "कला"}, {"shakespeare", "शेक्सपियर"},
                    {"nritya", "नृत्य"}, {"sahitya", "साहित्य"}, {"upanyas", "उपन्यास"},
                    {"sangeet", "संगीत"}, {"naatak", "नाटक"}});
}

inline WordList translated_male() {
  return make_list("male attributes (translated)",
                   {{"purush", "पुरुष"}, {"aadmi", "आदमी"}, {"ladka", "लड़का"}, {"bhai", "भाई"},
                    {"veh", "वह"}, {"use", "उसे"}, {"uska", "उसका"}, {"beta", "बेटा"}});
}

inline WordList translated_female() {
  return make_list("female attributes (translated)",
                   {{"mahila", "महिला"}, {"aurat", "औरत"}, {"ladki", "लड़की"}, {"behen", "बहन"},
                    {"veh", "वह"}, {"use", "उसे"}, {"uski", "उसकी"}, {"beti", "बेटी"}});
}

inline WordList translated_pleasant() {
  return make_list("pleasant words (translated)",
                   {{"pyaar", "प्यार"}, {"shanti", "शांति"}, {"swasthya", "स्वास्थ्य"},
                    {"swatantrata", "स्वतंत्रता"}, {"dost", "दोस्त"}, {"imaandar", "ईमानदार"},
                    {"khushi", "ख़ुशी"}});
}

inline WordList translated_unpleasant() {
  return make_list("unpleasant words (translated)",
                   {{"durvyavahar", "दुर्व्यवहार"}, {"gandagi", "गंदगी"}, {"hatya", "हत्या"},
                    {"bimari", "बीमारी"}, {"maut", "मौत"}, {"dukh", "दुख"}, {"zeher", "ज़हर"}});
}

inline std::vector<AssociationTest> translated_suites() {
  using detail::make_test;
  const auto BM = Category::BM;
  std::vector<AssociationTest> out;
  out.push_back(make_test("translated-gender-maths-arts", "maths, arts vs male, female", BM,
                          translated_math(), translated_arts_math(), translated_male(),
                          translated_female(), Pos::common_noun, Pos::common_noun));
  out.push_back(make_test("translated-gender-science-arts", "science, arts vs male, female", BM,
                          translated_science(), translated_arts_science(), translated_male(),
                          translated_female(), Pos::common_noun, Pos::common_noun));
  out.push_back(make_test("translated-caste-adjectives", "adjectives vs caste", BM,
                          translated_pleasant(), translated_unpleasant(), upper_caste_names(),
                          lower_caste_names(), Pos::adjective, Pos::name));
  out.push_back(make_test("translated-religion-adjectives-terms", "adjectives vs religion terms",
                          BM, translated_pleasant(), translated_unpleasant(), hindu_terms(),
                          muslim_terms(), Pos::adjective, Pos::common_noun));
  out.push_back(make_test("translated-religion-adjectives-lastnames", "adjectives vs lastnames",
                          BM, translated_pleasant(), translated_unpleasant(), hindu_lastnames(),
                          muslim_lastnames(), Pos::adjective, Pos::name));
  out.push_back(make_test("translated-occupation-adjectives",
                          "adjectives vs urban, rural occupations", BM, translated_pleasant(),
                          translated_unpleasant(), urban_occupations(), rural_occupations(),
                          Pos::adjective, Pos::common_noun));
  for (auto& t : out) {
    t.variant = Variant::translated;
    t.reconstructed = true;
  }
  return out;
}

// Debiasing word lists -------------------------------------------------------

using WordPairs = std::vector<std::pair<std::string, std::string>>;

inline WordPairs zip(const WordList& male, const WordList& female) {
  WordPairs out;
  for (std::size_t i = 0; i < male.words.size() && i < female.words.size(); ++i) {
    out.emplace_back(male.words[i], female.words[i]);
  }
  return out;
}

/// Male/female definitional pairs (union of both gender attribute lists).
inline WordPairs gender_word_pairs() {
  WordPairs out = zip(male_words(), female_words());
  out.emplace_back("daada", "daadi");
  return out;
}
inline WordPairs verb_pairs() { return zip(male_verbs(), female_verbs()); }
inline WordPairs adjective_pairs() { return zip(male_adjectives(), female_adjectives()); }
inline WordPairs title_pairs() { return zip(male_titles(), female_titles()); }
inline WordPairs entity_pairs() { return zip(male_entities(), female_entities()); }

/// Default hard-debias equalize pairs: gendered words, verbs, adjectives and
/// titles. Pairs whose two sides are spelled identically are skipped.
inline WordPairs default_equalize_pairs() {
  WordPairs out;
  for (const auto& group : {gender_word_pairs(), verb_pairs(), adjective_pairs(), title_pairs()}) {
    for (const auto& p : group) {
      if (p.first != p.second) out.push_back(p);
    }
  }
  return out;
}

/// Default words excluded from neutralization: every gendered word above plus
/// the gendered inanimate entities.
inline std::vector<std::string> default_preserve_set() {
  std::set<std::string> words;
  for (const auto& group : {gender_word_pairs(), verb_pairs(), adjective_pairs(), title_pairs(),
                            entity_pairs()}) {
    for (const auto& [m, f] : group) {
      words.insert(m);
      words.insert(f);
    }
  }
  return {words.begin(), words.end()};
}

inline std::vector<std::string> caste_names() {
  auto out = upper_caste_names().words;
  for (const auto& w : lower_caste_names().words) out.push_back(w);
  return out;
}

inline std::vector<std::string> religious_entity_words() {
  auto out = hindu_entities().words;
  for (const auto& w : muslim_entities().words) out.push_back(w);
  return out;
}

}  // namespace embias::builtin
