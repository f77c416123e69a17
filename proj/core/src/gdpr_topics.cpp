#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "ppsum/corpus.hpp"
#include "ppsum/error.hpp"

namespace ppsum {

namespace {

// Headings of the 14 sections a GDPR privacy notice must cover, each with the
// hand-combined sample sentence used as its centroid text and ROUGE reference.
// The sample sentences are kept byte-for-byte, including their grammar slips.
constexpr GdprTopics kTopics{{
    {"What data do we collect?",
     "we collect personal identification information such as name, email, phone number, etc and other necessary "
     "data."},
    {"How do we collect your data?",
     "you directly provide us most of the data we collect your data when you register online, place order, "
     "voluntarily complete survey, provide feedback, use or view via cookies"},
    {"How will we use your data?",
     "we use your data to process order and manage account email you with special offers, share your data with "
     "partner companies, and send your data to credit reference agencies to prevent fraud and abuse."},
    {"How do we store your data?",
     "we securely retain, and maintain your data at until once this period time expired we delete your data by "
     "months years."},
    {"Marketing",
     "we send you information about products and services you might like recommend marketing third party use opt "
     "out later right to stop no longer wish marketing purposes."},
    {"What are your data protection rights?",
     "your data protection rights you have right to access rectify edit erase remove delete restrict processing "
     "object data portable control transfer."},
    {"What are cookies?",
     "what are cookies cookies are text files placed on your computer when you visit our website we collect "
     "through cookies."},
    {"How do we use cookies?",
     "we use your cookies to keep you signed in understand how you use our website."},
    {"What types of cookies do we use?",
     "we use different types of cookies, functionality remember your preferences language location advertising "
     "links you followed share online data with third parties for advertising authentication security "
     "performance analytics research."},
    {"How to manage your cookies",
     "manage cookies, you can set your browser not to accept cookies remove cookies some of features not function "
     "as a result"},
    {"Privacy policies of other websites",
     "we contain links to other websites our privacy policy apply only to our website, if you click link to "
     "another website you should read and refer to their policy'"},
    {"Changes to our privacy policy",
     "we keep our privacy policy under review and change regularly this was last updated on"},
    {"How to contact us",
     "how to contact us if you have questions on privacy policy data we hold on you data about data protection "
     "rights"},
    {"How to contact the appropriate authorities",
     "how to contact the appropriate authorities and data protection officer report complaint information "
     "commissioner office"},
}};

constexpr std::array<std::string_view, 40> kGenericPool{
    "A quiet river runs beside an old stone mill.",
    "Fresh bread smells wonderful on cold winter mornings.",
    "Bright orange leaves fell slowly across a narrow lane.",
    "Several children built a sandcastle near rocky cliffs.",
    "An elderly fisherman mended nets while gulls circled overhead.",
    "Tall pine trees swayed gently in an evening breeze.",
    "My grandmother baked apple pies every Sunday afternoon.",
    "A small gray kitten chased butterflies around a garden.",
    "Heavy rain flooded several streets after midnight.",
    "A neighbour painted a mural showing lions and zebras.",
    "A violinist played softly beneath a marble archway.",
    "Mountain climbers reached a snowy summit before sunrise.",
    "Two friends shared lemonade on a sunny porch.",
    "Clouds drifted lazily above golden wheat fields.",
    "An ancient castle overlooks a peaceful valley.",
    "Students planted sunflowers along a school fence.",
    "A long freight train rumbled past sleepy farms.",
    "Bees hummed busily among lavender bushes.",
    "A lighthouse blinked steadily through thick fog.",
    "Jazz musicians performed late into a warm summer night.",
    "Colourful kites danced high above a sandy beach.",
    "An owl hooted softly from a hollow oak.",
    "Pancakes with maple syrup make a cheerful breakfast.",
    "A sailor spotted dolphins leaping near a tiny island.",
    "Frost covered car windows after a chilly night.",
    "Local farmers sold pumpkins at a busy market.",
    "A painter mixed blue and yellow paint into green.",
    "Thunder rolled across distant hills before dawn.",
    "Hikers followed a winding trail toward a waterfall.",
    "Grandpa told funny stories beside a crackling fire.",
    "A red balloon floated over crowded city rooftops.",
    "Ducks paddled calmly across a shallow pond.",
    "Chefs chopped onions quickly in a noisy kitchen.",
    "Stars glittered brightly above a silent desert.",
    "A curious puppy sniffed every corner in a new house.",
    "Spring blossoms covered cherry trees in pale pink.",
    "An old clock ticked loudly in a dusty hallway.",
    "Cyclists raced downhill past blooming meadows.",
    "A gentle snowfall turned rooftops white overnight.",
    "Fireflies glowed among tall grass at twilight.",
};

std::uint64_t fnv1a(std::uint64_t h, std::string_view bytes) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace

std::uint64_t gdpr_topics_checksum(std::span<const GdprTopic> topics) {
  std::uint64_t h = 14695981039346656037ULL;
  for (const auto& t : topics) {
    h = fnv1a(h, t.header);
    h = fnv1a(h, "\t");
    h = fnv1a(h, t.combined_sentence);
    h = fnv1a(h, "\n");
  }
  return h;
}

const GdprTopics& load_gdpr_topics() {
  static const bool verified = gdpr_topics_checksum(kTopics) == kGdprTopicsChecksum;
  require(verified, ErrorKind::kIntegrity, "bundled GDPR topic table does not match its checksum");
  return kTopics;
}

std::vector<std::string> gdpr_topic_headers() {
  std::vector<std::string> out;
  for (const auto& t : load_gdpr_topics()) out.emplace_back(t.header);
  return out;
}

std::vector<std::string> gdpr_combined_sentences() {
  std::vector<std::string> out;
  for (const auto& t : load_gdpr_topics()) out.emplace_back(t.combined_sentence);
  return out;
}

std::span<const std::string_view> generic_sentence_pool() { return kGenericPool; }

}  // namespace ppsum
