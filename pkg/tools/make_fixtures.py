"""Regenerate the bundled fixture gazetteer and corpora under src/fuzzygir/data/."""
import json
from pathlib import Path

OUT = Path(__file__).resolve().parents[1] / "src" / "fuzzygir" / "data"


def box(x0, y0, x1, y1):
    return f"{x0} {y0};{x1} {y0};{x1} {y1};{x0} {y1};{x0} {y0}"


# place_id, name, alt names, level, lon, lat, polygon, parent, importance
PLACES = [
    # countries
    ("IN", "India", "Bharat", "country", 78.96, 20.59, box(68.0, 6.0, 97.5, 35.5), "", 1.0),
    ("US", "United States", "USA|United States of America", "country", -98.58, 39.83, box(-125.0, 24.0, -66.0, 49.5), "", 1.0),
    ("GB", "United Kingdom", "UK|Britain", "country", -2.0, 54.0, box(-8.2, 49.9, 1.8, 58.7), "", 0.95),
    ("LK", "Sri Lanka", "Ceylon", "country", 80.77, 7.87, box(79.6, 5.9, 81.9, 9.9), "", 0.9),
    # regions
    ("IN-TN", "Tamil Nadu", "", "region", 78.66, 11.13, box(76.2, 8.0, 80.4, 13.6), "IN", 0.8),
    ("IN-KA", "Karnataka", "", "region", 75.71, 15.32, box(74.0, 11.5, 78.6, 18.5), "IN", 0.8),
    ("IN-MH", "Maharashtra", "", "region", 75.71, 19.75, box(72.6, 15.6, 80.9, 22.0), "IN", 0.8),
    ("IN-DL", "Delhi", "NCT of Delhi", "region", 77.10, 28.70, "", "IN", 0.8),
    ("IN-KL", "Kerala", "", "region", 76.27, 10.85, box(74.8, 8.2, 77.4, 12.8), "IN", 0.75),
    ("US-IL", "Illinois", "", "region", -89.40, 40.63, box(-91.5, 37.0, -87.5, 42.5), "US", 0.75),
    ("US-MA", "Massachusetts", "", "region", -71.38, 42.41, box(-73.5, 41.2, -69.9, 42.9), "US", 0.75),
    ("GB-BRK", "Berkshire", "", "region", -1.18, 51.45, "", "GB", 0.6),
    ("GB-LND", "Greater London", "", "region", -0.13, 51.51, "", "GB", 0.8),
    ("LK-WP", "Western Province", "", "region", 80.07, 6.90, "", "LK", 0.6),
    # cities
    ("chennai", "Chennai", "Madras", "city", 80.2707, 13.0827, box(80.17, 12.90, 80.33, 13.23), "IN-TN", 0.9),
    ("madurai", "Madurai", "", "city", 78.1198, 9.9252, "", "IN-TN", 0.7),
    ("coimbatore", "Coimbatore", "Kovai", "city", 76.9558, 11.0168, "", "IN-TN", 0.7),
    ("bengaluru", "Bengaluru", "Bangalore", "city", 77.5946, 12.9716, "", "IN-KA", 0.9),
    ("mysuru", "Mysuru", "Mysore", "city", 76.6394, 12.2958, "", "IN-KA", 0.7),
    ("mumbai", "Mumbai", "Bombay", "city", 72.8777, 19.0760, "", "IN-MH", 0.9),
    ("pune", "Pune", "Poona", "city", 73.8567, 18.5204, "", "IN-MH", 0.75),
    ("new_delhi", "New Delhi", "", "city", 77.2090, 28.6139, "", "IN-DL", 0.9),
    ("kochi", "Kochi", "Cochin", "city", 76.2673, 9.9312, "", "IN-KL", 0.75),
    ("thiruvananthapuram", "Thiruvananthapuram", "Trivandrum", "city", 76.9366, 8.5241, "", "IN-KL", 0.7),
    ("springfield_il", "Springfield", "", "city", -89.6501, 39.7817, "", "US-IL", 0.6),
    ("springfield_ma", "Springfield", "", "city", -72.5898, 42.1015, "", "US-MA", 0.4),
    ("chicago", "Chicago", "", "city", -87.6298, 41.8781, "", "US-IL", 0.9),
    ("boston", "Boston", "", "city", -71.0589, 42.3601, "", "US-MA", 0.85),
    ("reading", "Reading", "", "city", -0.9781, 51.4543, "", "GB-BRK", 0.5),
    ("london", "London", "", "city", -0.1276, 51.5072, "", "GB-LND", 0.95),
    ("colombo", "Colombo", "", "city", 79.8612, 6.9271, "", "LK-WP", 0.8),
    # neighborhoods
    ("mylapore", "Mylapore", "", "neighborhood", 80.2676, 13.0368, "", "chennai", 0.5),
    ("triplicane", "Triplicane", "", "neighborhood", 80.2767, 13.0588, "", "chennai", 0.5),
    ("adyar", "Adyar", "", "neighborhood", 80.2574, 13.0012, "", "chennai", 0.5),
    ("t_nagar", "T Nagar", "Thyagaraya Nagar", "neighborhood", 80.2341, 13.0418, "", "chennai", 0.5),
    ("besant_nagar", "Besant Nagar", "", "neighborhood", 80.2668, 12.9990, "", "chennai", 0.45),
    ("egmore", "Egmore", "", "neighborhood", 80.2609, 13.0732, "", "chennai", 0.45),
    ("velachery", "Velachery", "", "neighborhood", 80.2209, 12.9815, "", "chennai", 0.45),
    ("guindy", "Guindy", "", "neighborhood", 80.2206, 13.0067, "", "chennai", 0.45),
    ("koramangala", "Koramangala", "", "neighborhood", 77.6245, 12.9352, "", "bengaluru", 0.5),
    ("indiranagar", "Indiranagar", "", "neighborhood", 77.6408, 12.9784, "", "bengaluru", 0.5),
    ("whitefield", "Whitefield", "", "neighborhood", 77.7500, 12.9698, "", "bengaluru", 0.45),
    ("colaba", "Colaba", "", "neighborhood", 72.8156, 18.9067, "", "mumbai", 0.5),
    ("bandra", "Bandra", "", "neighborhood", 72.8406, 19.0596, "", "mumbai", 0.5),
    ("andheri", "Andheri", "", "neighborhood", 72.8697, 19.1136, "", "mumbai", 0.45),
    ("connaught_place", "Connaught Place", "", "neighborhood", 77.2167, 28.6315, "", "new_delhi", 0.55),
    ("chanakyapuri", "Chanakyapuri", "", "neighborhood", 77.1855, 28.5961, "", "new_delhi", 0.45),
    ("fort_kochi", "Fort Kochi", "Fort Cochin", "neighborhood", 76.2427, 9.9658, "", "kochi", 0.5),
    ("forest_park", "Forest Park", "", "neighborhood", -72.5680, 42.0770, "", "springfield_ma", 0.4),
    ("mason_square", "Mason Square", "", "neighborhood", -72.5620, 42.1120, "", "springfield_ma", 0.35),
    ("enos_park", "Enos Park", "", "neighborhood", -89.6460, 39.8090, "", "springfield_il", 0.35),
    ("lincoln_park", "Lincoln Park", "", "neighborhood", -87.6470, 41.9214, "", "chicago", 0.5),
    ("westminster", "Westminster", "", "neighborhood", -0.1357, 51.4975, "", "london", 0.6),
    ("kollupitiya", "Kollupitiya", "Kollupitiye", "neighborhood", 79.8530, 6.9110, "", "colombo", 0.4),
    ("tallakulam", "Tallakulam", "", "neighborhood", 78.1330, 9.9390, "", "madurai", 0.35),
    ("koregaon_park", "Koregaon Park", "", "neighborhood", 73.8930, 18.5362, "", "pune", 0.45),
    # landmarks
    ("marina_beach", "Marina Beach", "Marina", "landmark", 80.2825, 13.0500, "", "triplicane", 0.8),
    ("kapaleeshwarar_temple", "Kapaleeshwarar Temple", "", "landmark", 80.2697, 13.0339, "", "mylapore", 0.6),
    ("santhome_cathedral", "Santhome Cathedral", "San Thome Basilica", "landmark", 80.2780, 13.0334, "", "mylapore", 0.55),
    ("elliots_beach", "Elliot's Beach", "Besant Nagar Beach", "landmark", 80.2717, 12.9986, "", "besant_nagar", 0.5),
    ("chennai_central", "Chennai Central", "", "landmark", 80.2750, 13.0827, "", "egmore", 0.6),
    ("fort_st_george", "Fort St. George", "Fort Saint George", "landmark", 80.2870, 13.0797, "", "chennai", 0.55),
    ("guindy_national_park", "Guindy National Park", "", "landmark", 80.2340, 13.0040, "", "guindy", 0.5),
    ("phoenix_marketcity", "Phoenix Marketcity", "", "landmark", 80.2180, 12.9910, "", "velachery", 0.4),
    ("valluvar_kottam", "Valluvar Kottam", "", "landmark", 80.2380, 13.0500, "", "t_nagar", 0.45),
    ("theosophical_society", "Theosophical Society", "", "landmark", 80.2660, 13.0110, "", "adyar", 0.4),
    ("lalbagh", "Lalbagh", "Lal Bagh", "landmark", 77.5848, 12.9507, "", "bengaluru", 0.6),
    ("cubbon_park", "Cubbon Park", "", "landmark", 77.5925, 12.9763, "", "bengaluru", 0.6),
    ("bangalore_palace", "Bangalore Palace", "", "landmark", 77.5921, 12.9987, "", "bengaluru", 0.55),
    ("forum_mall", "Forum Mall", "", "landmark", 77.6111, 12.9345, "", "koramangala", 0.4),
    ("gateway_of_india", "Gateway of India", "", "landmark", 72.8347, 18.9220, "", "colaba", 0.8),
    ("marine_drive", "Marine Drive", "", "landmark", 72.8230, 18.9430, "", "mumbai", 0.7),
    ("juhu_beach", "Juhu Beach", "", "landmark", 72.8265, 19.0988, "", "andheri", 0.6),
    ("bandra_worli_sea_link", "Bandra-Worli Sea Link", "Sea Link", "landmark", 72.8170, 19.0380, "", "bandra", 0.55),
    ("india_gate", "India Gate", "", "landmark", 77.2295, 28.6129, "", "new_delhi", 0.8),
    ("red_fort", "Red Fort", "Lal Qila", "landmark", 77.2410, 28.6562, "", "new_delhi", 0.8),
    ("qutub_minar", "Qutub Minar", "Qutb Minar", "landmark", 77.1855, 28.5245, "", "new_delhi", 0.75),
    ("jantar_mantar", "Jantar Mantar", "", "landmark", 77.2166, 28.6271, "", "connaught_place", 0.55),
    ("chinese_fishing_nets", "Chinese Fishing Nets", "", "landmark", 76.2420, 9.9680, "", "fort_kochi", 0.5),
    ("mattancherry_palace", "Mattancherry Palace", "Dutch Palace", "landmark", 76.2590, 9.9580, "", "kochi", 0.45),
    ("meenakshi_temple", "Meenakshi Temple", "Meenakshi Amman Temple", "landmark", 78.1193, 9.9195, "", "madurai", 0.75),
    ("mysore_palace", "Mysore Palace", "Amba Vilas Palace", "landmark", 76.6552, 12.3052, "", "mysuru", 0.75),
    ("marudamalai_temple", "Marudamalai Temple", "", "landmark", 76.8836, 11.0449, "", "coimbatore", 0.4),
    ("padmanabhaswamy_temple", "Padmanabhaswamy Temple", "", "landmark", 76.9435, 8.4828, "", "thiruvananthapuram", 0.6),
    ("lincoln_home", "Lincoln Home", "", "landmark", -89.6447, 39.7973, "", "springfield_il", 0.5),
    ("old_state_capitol", "Old State Capitol", "", "landmark", -89.6492, 39.8010, "", "springfield_il", 0.4),
    ("springfield_armory", "Springfield Armory", "", "landmark", -72.5820, 42.1080, "", "springfield_ma", 0.45),
    ("basketball_hall_of_fame", "Basketball Hall of Fame", "", "landmark", -72.5880, 42.0940, "", "springfield_ma", 0.5),
    ("navy_pier", "Navy Pier", "", "landmark", -87.6050, 41.8917, "", "chicago", 0.6),
    ("millennium_park", "Millennium Park", "", "landmark", -87.6226, 41.8826, "", "chicago", 0.6),
    ("fenway_park", "Fenway Park", "", "landmark", -71.0972, 42.3467, "", "boston", 0.65),
    ("big_ben", "Big Ben", "Elizabeth Tower", "landmark", -0.1246, 51.5007, "", "westminster", 0.85),
    ("tower_bridge", "Tower Bridge", "", "landmark", -0.0754, 51.5055, "", "london", 0.8),
    ("british_museum", "British Museum", "", "landmark", -0.1270, 51.5194, "", "london", 0.75),
    ("forbury_gardens", "Forbury Gardens", "", "landmark", -0.9680, 51.4570, "", "reading", 0.35),
    ("reading_abbey", "Reading Abbey", "", "landmark", -0.9660, 51.4560, "", "reading", 0.35),
    ("galle_face_green", "Galle Face Green", "", "landmark", 79.8450, 6.9270, "", "colombo", 0.6),
    ("gangaramaya_temple", "Gangaramaya Temple", "", "landmark", 79.8560, 6.9167, "", "kollupitiya", 0.5),
    ("shaniwar_wada", "Shaniwar Wada", "", "landmark", 73.8553, 18.5195, "", "pune", 0.55),
    ("aga_khan_palace", "Aga Khan Palace", "", "landmark", 73.9015, 18.5524, "", "koregaon_park", 0.5),
]

# doc_id -> text. d03, d17, d29, d41 are the seeded "flood near Marina Beach" documents.
CORPUS = {
    "d01": "Thousands gathered at Marina Beach for the annual kite festival on Sunday.",
    "d02": "Flood waters entered homes in Velachery after two days of heavy rain.",
    "d03": "Heavy flood waters were reported near Marina Beach on Tuesday evening, and fishermen moved their boats inland.",
    "d04": "The morning walk near Marina Beach is popular with joggers from Triplicane.",
    "d05": "Residents of Kochi faced a flood as the backwaters rose near Fort Kochi.",
    "d06": "A flash flood in Mumbai stranded commuters near Andheri station.",
    "d07": "Farmers near Madurai reported flood damage to paddy fields along the Vaigai river.",
    "d08": "Flood relief trucks left Bengaluru for Kerala on Monday night.",
    "d09": "The flood was far from Marina Beach, affecting villages near Coimbatore.",
    "d10": "A sand sculpture contest was held near Marina Beach by art students.",
    "d11": "Springfield officials in Massachusetts opened a new public library.",
    "d12": "Joggers crowded Forest Park in Springfield on a sunny Sunday.",
    "d13": "The Springfield Armory museum drew record visitors to Springfield this summer.",
    "d14": "Tickets for the Basketball Hall of Fame in Springfield sold out within hours.",
    "d15": "A new farmers market opened in Mason Square, Springfield, last week.",
    "d16": "Tourists visited the Lincoln Home in Springfield before lunch.",
    "d17": "A flood warning was issued for families living close to Marina Beach after the cyclone made landfall.",
    "d18": "The reading was high, so the engineers recalibrated the sensor.",
    "d19": "Commuters in Reading waited for delayed trains to London.",
    "d20": "The ruins of Reading Abbey reopened to the public after restoration.",
    "d21": "A new bus depot will be built to the east of Guindy National Park.",
    "d22": "The hotel is very close to Lalbagh and the botanical gardens.",
    "d23": "The stadium is somewhat near Cubbon Park, according to the city map.",
    "d24": "Our guesthouse is within walking distance of the Gateway of India.",
    "d25": "Temple festivities in Mylapore drew crowds near Kapaleeshwarar Temple.",
    "d26": "Rainfall across Tamil Nadu was above normal this monsoon season.",
    "d27": "India recorded its warmest winter in a century.",
    "d28": "Traffic was diverted around Connaught Place during the parade.",
    "d29": "Volunteers described the flood beside Marina Beach as the worst in a decade. Near Marina Beach the promenade was closed.",
    "d30": "The Chennai Central station handled extra trains for the holiday weekend.",
    "d31": "A heritage walk started at Fort St. George and ended in Egmore.",
    "d32": "Engineers inspected the Bandra-Worli Sea Link after the storm.",
    "d33": "Diwali lights decorated India Gate and the Red Fort.",
    "d34": "Cricket fans packed a stadium in Chennai for the final match.",
    "d35": "Monsoon showers lashed Pune near Shaniwar Wada on Friday.",
    "d36": "The Chinese Fishing Nets at Fort Kochi attract photographers at sunset.",
    "d37": "Lanterns were floated on the lake near Navy Pier in Chicago.",
    "d38": "The Fenway Park crowd cheered as Boston won the series.",
    "d39": "Tourists photographed Big Ben and Tower Bridge in London.",
    "d40": "Evening crowds relaxed on Galle Face Green in Colombo.",
    "d41": "Officials in Chennai said the flood near Marina Beach receded by Thursday morning.",
    "d42": "The Meenakshi Temple in Madurai celebrated its annual chariot festival.",
    "d43": "The Mysore Palace was illuminated for Dasara celebrations.",
    "d44": "Shoppers filled the Forum Mall in Koramangala during the sale.",
    "d45": "Flooded underpasses in Guindy slowed traffic toward Phoenix Marketcity.",
    "d46": "A flood drill was conducted in Adyar near the Theosophical Society.",
    "d47": "The old lighthouse is far from Elliot's Beach but visible at night.",
    "d48": "Heavy rain and a flood alert closed schools across Maharashtra.",
    "d49": "Authorities in Springfield said the flood never reached Springfield's downtown.",
    "d50": "Fishermen near Santhome Cathedral mended nets on the shore.",
}

# Eight-document corpus in which "chennai" is a spatial term of exactly two documents.
MINI = {
    "m1": "Flooding near Marina Beach in Chennai closed the coastal road.",
    "m2": "Officials in Chennai announced new bus routes.",
    "m3": "Crowds gathered at Marina Beach for the festival.",
    "m4": "The Gateway of India was lit up for the holiday.",
    "m5": "Commuters in Mumbai faced delays after the rain.",
    "m6": "The hotel is very close to Lalbagh.",
    "m7": "A new bus depot will be built to the east of Guindy National Park.",
    "m8": "The reading was high.",
}


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    header = ["place_id", "primary_name", "alt_names", "level", "lon", "lat", "polygon", "parent_id", "importance"]
    with open(OUT / "gazetteer.tsv", "w", encoding="utf-8") as fh:
        fh.write("\t".join(header) + "\n")
        for row in PLACES:
            fh.write("\t".join(str(v) for v in row) + "\n")
    for name, docs in (("corpus.jsonl", CORPUS), ("mini_corpus.jsonl", MINI)):
        with open(OUT / name, "w", encoding="utf-8") as fh:
            for doc_id, text in docs.items():
                fh.write(json.dumps({"id": doc_id, "text": text}, ensure_ascii=False) + "\n")
    print(f"{len(PLACES)} places, {len(CORPUS)} docs, {len(MINI)} mini docs -> {OUT}")


if __name__ == "__main__":
    main()
