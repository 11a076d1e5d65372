//! Fixed fact tables for the knowledge environments.

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rel {
    Capital,
    Currency,
    Symbol,
    Author,
    Painter,
    Composer,
    Continent,
    Location,
    Language,
    Inventor,
    HomeCountry,
}

impl Rel {
    pub fn question(self, s: &str) -> String {
        match self {
            Rel::Capital => format!("What is the capital of {s}?"),
            Rel::Currency => format!("What is the currency of {s}?"),
            Rel::Symbol => format!("What is the chemical symbol for {s}?"),
            Rel::Author => format!("Who wrote {s}?"),
            Rel::Painter => format!("Who painted {s}?"),
            Rel::Composer => format!("Who composed {s}?"),
            Rel::Continent => format!("On which continent is {s} located?"),
            Rel::Location => format!("In which country is {s} located?"),
            Rel::Language => format!("What is the official language of {s}?"),
            Rel::Inventor => format!("Who invented {s}?"),
            Rel::HomeCountry => format!("What is the home country of {s}?"),
        }
    }

    pub fn title(self, s: &str) -> String {
        let head = match self {
            Rel::Capital => "Capital",
            Rel::Currency => "Currency",
            Rel::Symbol => "Chemical symbol",
            Rel::Author => "Author",
            Rel::Painter => "Painter",
            Rel::Composer => "Composer",
            Rel::Continent => "Continent",
            Rel::Location => "Location",
            Rel::Language => "Official language",
            Rel::Inventor => "Inventor",
            Rel::HomeCountry => "Home country",
        };
        format!("{head} of {s}")
    }

    pub fn sentence(self, s: &str, a: &str) -> String {
        let text = match self {
            Rel::Capital => format!("The capital city of {s} is {a}."),
            Rel::Currency => format!("The official currency of {s} is the {a}."),
            Rel::Symbol => format!("The element {s} has the chemical symbol {a}."),
            Rel::Author => format!("{s} was written by {a}."),
            Rel::Painter => format!("{s} was painted by {a}."),
            Rel::Composer => format!("{s} was composed by {a}."),
            Rel::Continent => format!("{s} lies on the continent of {a}."),
            Rel::Location => format!("{s} is located in {a}."),
            Rel::Language => format!("The official language of {s} is {a}."),
            Rel::Inventor => format!("{s} is credited to {a}."),
            Rel::HomeCountry => format!("The home country of {s} is {a}."),
        };
        capitalize(&text)
    }
}

pub fn capitalize(s: &str) -> String {
    let mut c = s.chars();
    match c.next() {
        Some(f) => f.to_uppercase().chain(c).collect(),
        None => String::new(),
    }
}

pub type Fact = (Rel, &'static str, &'static str);

use Rel::*;

pub const RETRIEVER_EASY: &[Fact] = &[
    (Capital, "France", "Paris"),
    (Capital, "Japan", "Tokyo"),
    (Capital, "Italy", "Rome"),
    (Capital, "Germany", "Berlin"),
    (Capital, "Spain", "Madrid"),
    (Capital, "Egypt", "Cairo"),
    (Capital, "Canada", "Ottawa"),
    (Capital, "Russia", "Moscow"),
    (Currency, "Japan", "yen"),
    (Currency, "the United Kingdom", "pound sterling"),
    (Currency, "the United States", "US dollar"),
    (Currency, "India", "Indian rupee"),
    (Currency, "Mexico", "Mexican peso"),
    (Currency, "China", "yuan"),
    (Currency, "Switzerland", "Swiss franc"),
    (Currency, "South Korea", "won"),
    (Symbol, "Oxygen", "O"),
    (Symbol, "Gold", "Au"),
    (Symbol, "Hydrogen", "H"),
    (Symbol, "Carbon", "C"),
    (Symbol, "Iron", "Fe"),
    (Symbol, "Silver", "Ag"),
    (Symbol, "Sodium", "Na"),
    (Symbol, "Helium", "He"),
    (Author, "Hamlet", "William Shakespeare"),
    (Author, "Pride and Prejudice", "Jane Austen"),
    (Author, "Nineteen Eighty-Four", "George Orwell"),
    (Author, "War and Peace", "Leo Tolstoy"),
    (Author, "The Odyssey", "Homer"),
    (Author, "Don Quixote", "Miguel de Cervantes"),
    (Author, "Moby-Dick", "Herman Melville"),
    (Author, "The Adventures of Tom Sawyer", "Mark Twain"),
    (Painter, "the Mona Lisa", "Leonardo da Vinci"),
    (Painter, "The Starry Night", "Vincent van Gogh"),
    (Painter, "Guernica", "Pablo Picasso"),
    (Painter, "The Last Supper", "Leonardo da Vinci"),
    (Painter, "The Scream", "Edvard Munch"),
    (Painter, "The Birth of Venus", "Sandro Botticelli"),
    (Painter, "Water Lilies", "Claude Monet"),
    (Composer, "The Four Seasons", "Antonio Vivaldi"),
    (Composer, "the Moonlight Sonata", "Ludwig van Beethoven"),
    (Composer, "The Magic Flute", "Wolfgang Amadeus Mozart"),
    (Composer, "The Nutcracker", "Pyotr Ilyich Tchaikovsky"),
    (
        Composer,
        "the Brandenburg Concertos",
        "Johann Sebastian Bach",
    ),
    (Composer, "Messiah", "George Frideric Handel"),
    (Composer, "The Blue Danube", "Johann Strauss II"),
    (Continent, "Brazil", "South America"),
    (Continent, "Kenya", "Africa"),
    (Continent, "Canada", "North America"),
    (Continent, "India", "Asia"),
    (Continent, "Germany", "Europe"),
    (Continent, "Argentina", "South America"),
    (Continent, "Japan", "Asia"),
    (Location, "the Eiffel Tower", "France"),
    (Location, "the Colosseum", "Italy"),
    (Location, "the Taj Mahal", "India"),
    (Location, "the Great Pyramid of Giza", "Egypt"),
    (Location, "the Statue of Liberty", "the United States"),
    (Location, "Machu Picchu", "Peru"),
    (Location, "the Sydney Opera House", "Australia"),
    (Location, "Big Ben", "the United Kingdom"),
    (Language, "Brazil", "Portuguese"),
    (Language, "Mexico", "Spanish"),
    (Language, "France", "French"),
    (Language, "Germany", "German"),
    (Language, "Japan", "Japanese"),
    (Language, "Italy", "Italian"),
    (Language, "Egypt", "Arabic"),
    (Inventor, "the telephone", "Alexander Graham Bell"),
    (Inventor, "the printing press", "Johannes Gutenberg"),
    (Inventor, "the World Wide Web", "Tim Berners-Lee"),
    (Inventor, "dynamite", "Alfred Nobel"),
    (Inventor, "the phonograph", "Thomas Edison"),
    (Inventor, "the radio", "Guglielmo Marconi"),
    (Inventor, "the diesel engine", "Rudolf Diesel"),
];

pub const RETRIEVER_MEDIUM: &[Fact] = &[
    (Capital, "Burkina Faso", "Ouagadougou"),
    (Capital, "Kyrgyzstan", "Bishkek"),
    (Capital, "Bhutan", "Thimphu"),
    (Capital, "Eritrea", "Asmara"),
    (Capital, "Suriname", "Paramaribo"),
    (Capital, "Vanuatu", "Port Vila"),
    (Capital, "Moldova", "Chisinau"),
    (Capital, "Tajikistan", "Dushanbe"),
    (Capital, "Mauritania", "Nouakchott"),
    (Capital, "Lesotho", "Maseru"),
    (Symbol, "Tin", "Sn"),
    (Symbol, "Antimony", "Sb"),
    (Symbol, "Tungsten", "W"),
    (Symbol, "Mercury", "Hg"),
    (Symbol, "Lead", "Pb"),
    (Symbol, "Potassium", "K"),
    (Symbol, "Copper", "Cu"),
    (Symbol, "Manganese", "Mn"),
    (Symbol, "Bismuth", "Bi"),
    (Symbol, "Cesium", "Cs"),
    (Currency, "Hungary", "forint"),
    (Currency, "Poland", "zloty"),
    (Currency, "Vietnam", "dong"),
    (Currency, "Peru", "sol"),
    (Currency, "Ghana", "cedi"),
    (Currency, "Bangladesh", "taka"),
    (Currency, "Malaysia", "ringgit"),
    (Currency, "Kazakhstan", "tenge"),
    (Currency, "the Czech Republic", "koruna"),
    (Author, "Things Fall Apart", "Chinua Achebe"),
    (
        Author,
        "One Hundred Years of Solitude",
        "Gabriel Garcia Marquez",
    ),
    (Author, "The Tale of Genji", "Murasaki Shikibu"),
    (Author, "Middlemarch", "George Eliot"),
    (Author, "Pedro Paramo", "Juan Rulfo"),
    (Author, "The Leopard", "Giuseppe Tomasi di Lampedusa"),
    (Author, "Dead Souls", "Nikolai Gogol"),
    (Author, "Ficciones", "Jorge Luis Borges"),
    (
        Painter,
        "The Garden of Earthly Delights",
        "Hieronymus Bosch",
    ),
    (Painter, "the Arnolfini Portrait", "Jan van Eyck"),
    (Painter, "Las Meninas", "Diego Velazquez"),
    (Painter, "The Hay Wain", "John Constable"),
    (Painter, "Liberty Leading the People", "Eugene Delacroix"),
    (Painter, "The Night Watch", "Rembrandt"),
    (Painter, "Olympia", "Edouard Manet"),
    (Painter, "The Kiss", "Gustav Klimt"),
    (Composer, "The Rite of Spring", "Igor Stravinsky"),
    (Composer, "Bolero", "Maurice Ravel"),
    (Composer, "The Planets", "Gustav Holst"),
    (Composer, "Pictures at an Exhibition", "Modest Mussorgsky"),
    (Composer, "The Moldau", "Bedrich Smetana"),
    (Composer, "Carmina Burana", "Carl Orff"),
    (Composer, "Finlandia", "Jean Sibelius"),
    (Composer, "the Peer Gynt suites", "Edvard Grieg"),
    (Language, "Suriname", "Dutch"),
    (Language, "Mozambique", "Portuguese"),
    (Language, "Andorra", "Catalan"),
    (Language, "Laos", "Lao"),
    (Language, "Iran", "Persian"),
    (Language, "Cambodia", "Khmer"),
    (Location, "Petra", "Jordan"),
    (Location, "Angkor Wat", "Cambodia"),
    (Location, "Borobudur", "Indonesia"),
    (Location, "Chichen Itza", "Mexico"),
    (Location, "the Hagia Sophia", "Turkey"),
    (Location, "the Alhambra", "Spain"),
    (Location, "Neuschwanstein Castle", "Germany"),
    (Inventor, "the cotton gin", "Eli Whitney"),
    (Inventor, "the stethoscope", "Rene Laennec"),
    (
        Inventor,
        "the mercury thermometer",
        "Daniel Gabriel Fahrenheit",
    ),
    (Inventor, "the voltaic pile", "Alessandro Volta"),
    (Inventor, "the spinning jenny", "James Hargreaves"),
    (Inventor, "the polio vaccine", "Jonas Salk"),
];

/// (lookup key, question, year).
pub type Event = (&'static str, &'static str, i64);

pub const YEARS_EASY: &[Event] = &[
    (
        "Moon landing",
        "What year did humans first land on the Moon?",
        1969,
    ),
    (
        "Fall of the Berlin Wall",
        "In what year did the Berlin Wall fall?",
        1989,
    ),
    (
        "Signing of the US Declaration of Independence",
        "In what year was the United States Declaration of Independence signed?",
        1776,
    ),
    (
        "End of World War II",
        "In what year did World War II end?",
        1945,
    ),
    (
        "Start of World War I",
        "In what year did World War I begin?",
        1914,
    ),
    (
        "Columbus reaches the Americas",
        "In what year did Christopher Columbus first reach the Americas?",
        1492,
    ),
    (
        "Storming of the Bastille",
        "In what year was the Bastille stormed at the start of the French Revolution?",
        1789,
    ),
    (
        "Sinking of the Titanic",
        "In what year did the Titanic sink?",
        1912,
    ),
    (
        "Attack on Pearl Harbor",
        "In what year was Pearl Harbor attacked?",
        1941,
    ),
    (
        "Assassination of John F. Kennedy",
        "In what year was John F. Kennedy assassinated?",
        1963,
    ),
    (
        "Signing of the Magna Carta",
        "In what year was the Magna Carta sealed?",
        1215,
    ),
    (
        "Battle of Hastings",
        "In what year was the Battle of Hastings fought?",
        1066,
    ),
    (
        "September 11 attacks",
        "In what year did the September 11 attacks on the United States take place?",
        2001,
    ),
    (
        "Dissolution of the Soviet Union",
        "In what year was the Soviet Union dissolved?",
        1991,
    ),
    (
        "Start of World War II",
        "In what year did World War II begin?",
        1939,
    ),
    (
        "End of World War I",
        "In what year did World War I end?",
        1918,
    ),
    (
        "October Revolution in Russia",
        "In what year did the October Revolution take place in Russia?",
        1917,
    ),
    (
        "Wall Street Crash",
        "In what year did the Wall Street Crash that began the Great Depression occur?",
        1929,
    ),
    (
        "First powered flight by the Wright brothers",
        "In what year did the Wright brothers make the first powered airplane flight?",
        1903,
    ),
    (
        "Battle of Waterloo",
        "In what year was the Battle of Waterloo fought?",
        1815,
    ),
    (
        "Emancipation Proclamation",
        "In what year was the Emancipation Proclamation issued?",
        1863,
    ),
    (
        "Start of the American Civil War",
        "In what year did the American Civil War begin?",
        1861,
    ),
    (
        "End of the American Civil War",
        "In what year did the American Civil War end?",
        1865,
    ),
    (
        "Release of Nelson Mandela",
        "In what year was Nelson Mandela released from prison?",
        1990,
    ),
    (
        "Nelson Mandela becomes president",
        "In what year did Nelson Mandela become president of South Africa?",
        1994,
    ),
    (
        "Chernobyl disaster",
        "In what year did the Chernobyl nuclear disaster happen?",
        1986,
    ),
    (
        "Launch of Sputnik",
        "In what year was Sputnik 1 launched?",
        1957,
    ),
    (
        "Yuri Gagarin's spaceflight",
        "In what year did Yuri Gagarin become the first human in space?",
        1961,
    ),
    (
        "Founding of the United Nations",
        "In what year was the United Nations founded?",
        1945,
    ),
    (
        "Indian independence",
        "In what year did India gain independence from Britain?",
        1947,
    ),
    (
        "Founding of the People's Republic of China",
        "In what year was the People's Republic of China founded?",
        1949,
    ),
    (
        "I Have a Dream speech",
        "In what year did Martin Luther King Jr. deliver his I Have a Dream speech?",
        1963,
    ),
    (
        "Assassination of Abraham Lincoln",
        "In what year was Abraham Lincoln assassinated?",
        1865,
    ),
    (
        "Ninety-five Theses",
        "In what year did Martin Luther publish his Ninety-five Theses?",
        1517,
    ),
    (
        "Fall of Constantinople",
        "In what year did Constantinople fall to the Ottomans?",
        1453,
    ),
    (
        "Birth of William Shakespeare",
        "In what year was William Shakespeare born?",
        1564,
    ),
    (
        "Introduction of euro banknotes and coins",
        "In what year were euro banknotes and coins introduced?",
        2002,
    ),
    (
        "Release of the first iPhone",
        "In what year was the first iPhone released?",
        2007,
    ),
    (
        "Atomic bombing of Hiroshima",
        "In what year was the atomic bomb dropped on Hiroshima?",
        1945,
    ),
    (
        "Battle of Gettysburg",
        "In what year was the Battle of Gettysburg fought?",
        1863,
    ),
    (
        "Louisiana Purchase",
        "In what year did the United States make the Louisiana Purchase?",
        1803,
    ),
    (
        "Boston Tea Party",
        "In what year did the Boston Tea Party take place?",
        1773,
    ),
    (
        "Coronation of Napoleon",
        "In what year was Napoleon crowned Emperor of the French?",
        1804,
    ),
    (
        "Death of Queen Victoria",
        "In what year did Queen Victoria die?",
        1901,
    ),
    (
        "Coronation of Elizabeth II",
        "In what year was Queen Elizabeth II crowned?",
        1953,
    ),
    (
        "Discovery of penicillin",
        "In what year did Alexander Fleming discover penicillin?",
        1928,
    ),
    (
        "Publication of On the Origin of Species",
        "In what year was Darwin's On the Origin of Species published?",
        1859,
    ),
    (
        "Telephone patent",
        "In what year did Alexander Graham Bell patent the telephone?",
        1876,
    ),
    (
        "Woodstock festival",
        "In what year was the Woodstock music festival held?",
        1969,
    ),
    (
        "Treaty of Versailles",
        "In what year was the Treaty of Versailles signed?",
        1919,
    ),
    (
        "Great Fire of London",
        "In what year did the Great Fire of London take place?",
        1666,
    ),
    (
        "Defeat of the Spanish Armada",
        "In what year was the Spanish Armada defeated?",
        1588,
    ),
    (
        "Eruption of Vesuvius that buried Pompeii",
        "In what year did Mount Vesuvius erupt and bury Pompeii?",
        79,
    ),
    (
        "First FIFA World Cup",
        "In what year was the first FIFA World Cup held?",
        1930,
    ),
    (
        "First modern Olympic Games",
        "In what year were the first modern Olympic Games held in Athens?",
        1896,
    ),
    (
        "Handover of Hong Kong",
        "In what year was Hong Kong handed over to China?",
        1997,
    ),
    (
        "Brexit referendum",
        "In what year did the United Kingdom hold its Brexit referendum?",
        2016,
    ),
    (
        "First election of Barack Obama",
        "In what year was Barack Obama first elected president?",
        2008,
    ),
    (
        "Hurricane Katrina",
        "In what year did Hurricane Katrina strike New Orleans?",
        2005,
    ),
    (
        "Indian Ocean tsunami",
        "In what year did the Indian Ocean earthquake and tsunami occur?",
        2004,
    ),
    (
        "Cuban Missile Crisis",
        "In what year did the Cuban Missile Crisis take place?",
        1962,
    ),
    (
        "Start of the Korean War",
        "In what year did the Korean War begin?",
        1950,
    ),
    (
        "Fall of Saigon",
        "In what year did Saigon fall, ending the Vietnam War?",
        1975,
    ),
    (
        "Construction of the Berlin Wall",
        "In what year was the Berlin Wall built?",
        1961,
    ),
    (
        "Opening of the Panama Canal",
        "In what year did the Panama Canal open?",
        1914,
    ),
    (
        "Completion of the Eiffel Tower",
        "In what year was the Eiffel Tower completed?",
        1889,
    ),
    (
        "Dedication of the Statue of Liberty",
        "In what year was the Statue of Liberty dedicated?",
        1886,
    ),
    (
        "Publication of the first Harry Potter book",
        "In what year was the first Harry Potter book published?",
        1997,
    ),
    (
        "Launch of Wikipedia",
        "In what year was Wikipedia launched?",
        2001,
    ),
    (
        "Eruption of Mount St. Helens",
        "In what year did Mount St. Helens erupt?",
        1980,
    ),
];

pub const YEARS_MEDIUM: &[Event] = &[
    (
        "Treaty of Tordesillas",
        "What year was the Treaty of Tordesillas signed?",
        1494,
    ),
    (
        "Peace of Westphalia",
        "In what year was the Peace of Westphalia concluded?",
        1648,
    ),
    (
        "Congress of Vienna",
        "In what year did the Congress of Vienna conclude?",
        1815,
    ),
    (
        "Battle of Lepanto",
        "In what year was the Battle of Lepanto fought?",
        1571,
    ),
    (
        "Treaty of Utrecht",
        "In what year was the Treaty of Utrecht signed?",
        1713,
    ),
    (
        "Battle of Agincourt",
        "In what year was the Battle of Agincourt fought?",
        1415,
    ),
    (
        "Diet of Worms",
        "In what year was the Diet of Worms held?",
        1521,
    ),
    (
        "Edict of Nantes",
        "In what year was the Edict of Nantes issued?",
        1598,
    ),
    (
        "Glorious Revolution",
        "In what year did the Glorious Revolution take place in England?",
        1688,
    ),
    (
        "Battle of Plassey",
        "In what year was the Battle of Plassey fought?",
        1757,
    ),
    (
        "Treaty of Nanking",
        "In what year was the Treaty of Nanking signed?",
        1842,
    ),
    (
        "Meiji Restoration",
        "In what year did the Meiji Restoration begin?",
        1868,
    ),
    (
        "Start of the Taiping Rebellion",
        "In what year did the Taiping Rebellion begin?",
        1850,
    ),
    (
        "Indian Rebellion",
        "In what year did the Indian Rebellion against the East India Company begin?",
        1857,
    ),
    (
        "Battle of Tours",
        "In what year was the Battle of Tours fought?",
        732,
    ),
    (
        "First Council of Nicaea",
        "In what year was the First Council of Nicaea held?",
        325,
    ),
    (
        "Battle of Manzikert",
        "In what year was the Battle of Manzikert fought?",
        1071,
    ),
    (
        "Sack of Rome by the Visigoths",
        "In what year did the Visigoths sack Rome?",
        410,
    ),
    (
        "Battle of Bosworth Field",
        "In what year was the Battle of Bosworth Field fought?",
        1485,
    ),
    (
        "Treaty of Paris ending the American Revolutionary War",
        "In what year was the Treaty of Paris that ended the American Revolutionary War signed?",
        1783,
    ),
    (
        "Battle of Trafalgar",
        "In what year was the Battle of Trafalgar fought?",
        1805,
    ),
    (
        "Union of England and Scotland",
        "In what year did the Acts of Union join England and Scotland?",
        1707,
    ),
    (
        "Peace of Augsburg",
        "In what year was the Peace of Augsburg concluded?",
        1555,
    ),
    (
        "St. Bartholomew's Day massacre",
        "In what year did the St. Bartholomew's Day massacre take place?",
        1572,
    ),
    (
        "Start of the Thirty Years' War",
        "In what year did the Thirty Years' War begin?",
        1618,
    ),
    (
        "Battle of Vienna",
        "In what year was the Battle of Vienna fought?",
        1683,
    ),
    (
        "Battle of Poltava",
        "In what year was the Battle of Poltava fought?",
        1709,
    ),
    (
        "Treaty of Waitangi",
        "In what year was the Treaty of Waitangi signed?",
        1840,
    ),
    (
        "Start of the Haitian Revolution",
        "In what year did the Haitian Revolution begin?",
        1791,
    ),
    (
        "Battle of Ayacucho",
        "In what year was the Battle of Ayacucho fought?",
        1824,
    ),
    (
        "Berlin Conference",
        "In what year did the Berlin Conference on Africa convene?",
        1884,
    ),
    (
        "Xinhai Revolution",
        "In what year did the Xinhai Revolution take place in China?",
        1911,
    ),
    (
        "Treaty of Brest-Litovsk",
        "In what year was the Treaty of Brest-Litovsk signed?",
        1918,
    ),
    (
        "Balfour Declaration",
        "In what year was the Balfour Declaration issued?",
        1917,
    ),
    (
        "Sykes-Picot Agreement",
        "In what year was the Sykes-Picot Agreement concluded?",
        1916,
    ),
    (
        "Suez Crisis",
        "In what year did the Suez Crisis take place?",
        1956,
    ),
    (
        "Bay of Pigs invasion",
        "In what year did the Bay of Pigs invasion take place?",
        1961,
    ),
    (
        "Prague Spring",
        "In what year did the Prague Spring take place?",
        1968,
    ),
    (
        "Treaty of Rome",
        "In what year was the Treaty of Rome establishing the European Economic Community signed?",
        1957,
    ),
    (
        "Battle of Dien Bien Phu",
        "In what year was the Battle of Dien Bien Phu fought?",
        1954,
    ),
    (
        "Velvet Revolution",
        "In what year did the Velvet Revolution take place in Czechoslovakia?",
        1989,
    ),
    (
        "Battle of Stamford Bridge",
        "In what year was the Battle of Stamford Bridge fought?",
        1066,
    ),
    (
        "Arrival of the Black Death in Europe",
        "In what year did the Black Death arrive in Europe?",
        1347,
    ),
    (
        "East-West Schism",
        "In what year did the East-West Schism split the Christian church?",
        1054,
    ),
    (
        "Battle of Bannockburn",
        "In what year was the Battle of Bannockburn fought?",
        1314,
    ),
    (
        "Treaty of Verdun",
        "In what year was the Treaty of Verdun signed?",
        843,
    ),
    (
        "Coronation of Charlemagne",
        "In what year was Charlemagne crowned emperor?",
        800,
    ),
    (
        "Completion of the Domesday Book",
        "In what year was the Domesday Book completed?",
        1086,
    ),
    (
        "Battle of Ain Jalut",
        "In what year was the Battle of Ain Jalut fought?",
        1260,
    ),
    (
        "Fall of Granada",
        "In what year did Granada fall to the Catholic Monarchs?",
        1492,
    ),
    (
        "Founding of the Dutch East India Company",
        "In what year was the Dutch East India Company founded?",
        1602,
    ),
    (
        "Battle of Blenheim",
        "In what year was the Battle of Blenheim fought?",
        1704,
    ),
    (
        "South Sea Bubble",
        "In what year did the South Sea Bubble burst?",
        1720,
    ),
    (
        "Lisbon earthquake",
        "In what year did the great Lisbon earthquake strike?",
        1755,
    ),
    (
        "Battles of Saratoga",
        "In what year were the Battles of Saratoga fought?",
        1777,
    ),
    (
        "Start of the Greek War of Independence",
        "In what year did the Greek War of Independence begin?",
        1821,
    ),
    (
        "Start of the Crimean War",
        "In what year did the Crimean War begin?",
        1853,
    ),
    (
        "Battle of Solferino",
        "In what year was the Battle of Solferino fought?",
        1859,
    ),
    (
        "Proclamation of the German Empire",
        "In what year was the German Empire proclaimed at Versailles?",
        1871,
    ),
    (
        "Treaty of Guadalupe Hidalgo",
        "In what year was the Treaty of Guadalupe Hidalgo signed?",
        1848,
    ),
    (
        "Start of the Mexican Revolution",
        "In what year did the Mexican Revolution begin?",
        1910,
    ),
    (
        "Easter Rising",
        "In what year did the Easter Rising take place in Dublin?",
        1916,
    ),
    (
        "Kellogg-Briand Pact",
        "In what year was the Kellogg-Briand Pact signed?",
        1928,
    ),
    (
        "Start of the Spanish Civil War",
        "In what year did the Spanish Civil War begin?",
        1936,
    ),
    (
        "Algerian independence",
        "In what year did Algeria gain independence from France?",
        1962,
    ),
    (
        "Battle of Adwa",
        "In what year was the Battle of Adwa fought?",
        1896,
    ),
    (
        "Treaty of Tientsin",
        "In what year were the Treaties of Tientsin signed?",
        1858,
    ),
    (
        "Battle of Sekigahara",
        "In what year was the Battle of Sekigahara fought?",
        1600,
    ),
    (
        "Battle of Hattin",
        "In what year was the Battle of Hattin fought?",
        1187,
    ),
    (
        "Paris Commune",
        "In what year was the Paris Commune established?",
        1871,
    ),
    (
        "Battle of Austerlitz",
        "In what year was the Battle of Austerlitz fought?",
        1805,
    ),
];

/// (game, attribute, value, question).
pub type GameFact = (&'static str, &'static str, i64, &'static str);

pub const GAMES_EASY: &[GameFact] = &[
    (
        "Chess",
        "squares on the board",
        64,
        "How many squares are on a standard chessboard?",
    ),
    (
        "Chess",
        "pieces per player",
        16,
        "How many pieces does each player start with in chess?",
    ),
    (
        "Chess",
        "pawns per player",
        8,
        "How many pawns does each player start with in chess?",
    ),
    (
        "Chess",
        "knights per player",
        2,
        "How many knights does each player start with in chess?",
    ),
    (
        "Checkers",
        "pieces per player",
        12,
        "How many pieces does each player start with in checkers?",
    ),
    (
        "Playing cards",
        "cards in a standard deck",
        52,
        "How many cards are in a standard deck of playing cards, not counting jokers?",
    ),
    (
        "Playing cards",
        "suits in a standard deck",
        4,
        "How many suits are in a standard deck of playing cards?",
    ),
    (
        "Playing cards",
        "face cards in a standard deck",
        12,
        "How many face cards are in a standard deck of playing cards?",
    ),
    (
        "Tic-tac-toe",
        "squares in the grid",
        9,
        "How many squares are in a tic-tac-toe grid?",
    ),
    (
        "Soccer",
        "players per team on the field",
        11,
        "How many players does each soccer team have on the field?",
    ),
    (
        "Soccer",
        "minutes in a regulation match",
        90,
        "How many minutes does a regulation soccer match last?",
    ),
    (
        "Basketball",
        "players per team on the court",
        5,
        "How many players does each basketball team have on the court?",
    ),
    (
        "Basketball",
        "quarters in an NBA game",
        4,
        "How many quarters are in an NBA basketball game?",
    ),
    (
        "Basketball",
        "minutes per NBA quarter",
        12,
        "How many minutes long is each quarter in an NBA game?",
    ),
    (
        "Baseball",
        "innings in a regulation game",
        9,
        "How many innings are in a regulation baseball game?",
    ),
    (
        "Baseball",
        "strikes for a strikeout",
        3,
        "How many strikes make a strikeout in baseball?",
    ),
    (
        "Baseball",
        "balls for a walk",
        4,
        "How many balls earn a batter a walk in baseball?",
    ),
    (
        "Baseball",
        "fielders per team",
        9,
        "How many players does a baseball team have in the field?",
    ),
    (
        "Volleyball",
        "players per team on the court",
        6,
        "How many players does each indoor volleyball team have on the court?",
    ),
    (
        "Volleyball",
        "points to win a set",
        25,
        "How many points are needed to win a regular set of indoor volleyball?",
    ),
    (
        "American football",
        "players per team on the field",
        11,
        "How many players does each American football team have on the field?",
    ),
    (
        "American football",
        "points for a touchdown",
        6,
        "How many points is a touchdown worth in American football?",
    ),
    (
        "American football",
        "points for a field goal",
        3,
        "How many points is a field goal worth in American football?",
    ),
    (
        "Ice hockey",
        "players per team on the ice",
        6,
        "How many players, including the goalie, does each ice hockey team have on the ice?",
    ),
    (
        "Ice hockey",
        "periods in a game",
        3,
        "How many periods are in a regulation ice hockey game?",
    ),
    (
        "Dice",
        "faces on a standard die",
        6,
        "How many faces does a standard die have?",
    ),
    (
        "Dice",
        "sum of opposite faces",
        7,
        "What do opposite faces of a standard die always add up to?",
    ),
    (
        "Dice",
        "highest roll with two dice",
        12,
        "What is the highest total you can roll with two standard dice?",
    ),
    (
        "Monopoly",
        "spaces on the board",
        40,
        "How many spaces are on a standard Monopoly board?",
    ),
    (
        "Monopoly",
        "money for passing GO",
        200,
        "How many dollars do you collect for passing GO in classic Monopoly?",
    ),
    (
        "Monopoly",
        "houses before a hotel",
        4,
        "How many houses must be on a Monopoly property before you can build a hotel?",
    ),
    (
        "Scrabble",
        "tiles on a rack",
        7,
        "How many tiles does each Scrabble player hold on their rack?",
    ),
    (
        "Scrabble",
        "points for the letter Q",
        10,
        "How many points is the letter Q worth in English Scrabble?",
    ),
    (
        "Bowling",
        "pins",
        10,
        "How many pins are set up in ten-pin bowling?",
    ),
    (
        "Bowling",
        "perfect score",
        300,
        "What is a perfect score in ten-pin bowling?",
    ),
    (
        "Rugby union",
        "players per team on the field",
        15,
        "How many players does each rugby union team have on the field?",
    ),
    (
        "Rugby union",
        "points for a try",
        5,
        "How many points is a try worth in rugby union?",
    ),
    (
        "Golf",
        "holes on a standard course",
        18,
        "How many holes are on a standard golf course?",
    ),
    (
        "Darts",
        "points for the inner bullseye",
        50,
        "How many points is the inner bullseye worth in darts?",
    ),
    (
        "Darts",
        "numbered sections on the board",
        20,
        "How many numbered sections are on a standard dartboard?",
    ),
    (
        "Darts",
        "maximum with three darts",
        180,
        "What is the maximum score with three darts in a single turn?",
    ),
    (
        "Cricket",
        "players per team",
        11,
        "How many players are on a cricket team?",
    ),
    (
        "Cricket",
        "balls per over",
        6,
        "How many legal balls are in an over in cricket?",
    ),
    (
        "Connect Four",
        "columns",
        7,
        "How many columns does a standard Connect Four grid have?",
    ),
    (
        "Connect Four",
        "rows",
        6,
        "How many rows does a standard Connect Four grid have?",
    ),
    (
        "Sudoku",
        "cells in the grid",
        81,
        "How many cells are in a standard Sudoku grid?",
    ),
    (
        "Rubik's Cube",
        "stickers per face",
        9,
        "How many colored squares are on one face of a standard Rubik's Cube?",
    ),
    (
        "Rubik's Cube",
        "colors",
        6,
        "How many colors does a standard Rubik's Cube have?",
    ),
    (
        "Uno",
        "cards dealt to each player",
        7,
        "How many cards is each player dealt at the start of Uno?",
    ),
    (
        "Go",
        "lines in each direction",
        19,
        "How many lines run in each direction on a standard Go board?",
    ),
    (
        "Backgammon",
        "checkers per player",
        15,
        "How many checkers does each backgammon player have?",
    ),
    (
        "Backgammon",
        "points on the board",
        24,
        "How many points (triangles) are on a backgammon board?",
    ),
    (
        "Dominoes",
        "tiles in a double-six set",
        28,
        "How many tiles are in a standard double-six domino set?",
    ),
    ("Yahtzee", "dice", 5, "How many dice are used in Yahtzee?"),
    (
        "Table tennis",
        "points to win a game",
        11,
        "How many points are needed to win a game of table tennis?",
    ),
    (
        "Badminton",
        "points to win a game",
        21,
        "How many points are needed to win a game of badminton?",
    ),
    (
        "Tennis",
        "games to win a set",
        6,
        "What is the minimum number of games needed to win a set in tennis?",
    ),
    (
        "Tennis",
        "Grand Slam tournaments per year",
        4,
        "How many Grand Slam tennis tournaments are held each year?",
    ),
    (
        "Boxing",
        "rounds in a championship bout",
        12,
        "How many rounds are in a modern professional boxing championship bout?",
    ),
    (
        "Snooker",
        "red balls",
        15,
        "How many red balls are racked at the start of a snooker frame?",
    ),
    (
        "Pool",
        "balls in eight-ball including the cue ball",
        16,
        "How many balls, including the cue ball, are used in eight-ball pool?",
    ),
    (
        "Pool",
        "pockets on the table",
        6,
        "How many pockets does a standard pool table have?",
    ),
    (
        "Handball",
        "players per team on the court",
        7,
        "How many players does each handball team have on the court?",
    ),
    (
        "Water polo",
        "players per team in the water",
        7,
        "How many players does each water polo team have in the water?",
    ),
    (
        "Netball",
        "players per team on the court",
        7,
        "How many players does each netball team have on the court?",
    ),
    (
        "Twister",
        "colors on the mat",
        4,
        "How many colors of circles are on a Twister mat?",
    ),
    (
        "Blackjack",
        "target total",
        21,
        "What hand total are players trying to reach without going over in blackjack?",
    ),
    (
        "Soccer",
        "yards to the penalty spot",
        12,
        "How many yards from the goal line is the penalty spot in soccer?",
    ),
    (
        "Basketball",
        "height of the hoop in feet",
        10,
        "How many feet high is a regulation basketball hoop?",
    ),
    (
        "Golf",
        "maximum clubs in a bag",
        14,
        "What is the maximum number of clubs a golfer may carry under the rules?",
    ),
];

pub const GAMES_MEDIUM: &[GameFact] = &[
    (
        "Mahjong",
        "tiles in a standard set",
        144,
        "How many tiles are in a standard Mahjong set?",
    ),
    (
        "Mahjong",
        "suits",
        3,
        "How many suits of numbered tiles are in Mahjong?",
    ),
    (
        "Shogi",
        "squares on the board",
        81,
        "How many squares are on a shogi board?",
    ),
    (
        "Shogi",
        "pieces per player",
        20,
        "How many pieces does each player start with in shogi?",
    ),
    (
        "Xiangqi",
        "pieces per player",
        16,
        "How many pieces does each player start with in xiangqi (Chinese chess)?",
    ),
    (
        "Xiangqi",
        "files on the board",
        9,
        "How many vertical lines (files) are on a xiangqi board?",
    ),
    (
        "Go",
        "black stones in a standard set",
        181,
        "How many black stones are in a standard Go set?",
    ),
    (
        "Go",
        "star points on a full board",
        9,
        "How many star points (hoshi) are marked on a 19x19 Go board?",
    ),
    (
        "Scrabble",
        "tiles in the English set",
        100,
        "How many tiles are in an English-language Scrabble set?",
    ),
    (
        "Scrabble",
        "blank tiles",
        2,
        "How many blank tiles are in a standard Scrabble set?",
    ),
    (
        "Scrabble",
        "squares on the board",
        225,
        "How many squares are on a Scrabble board?",
    ),
    (
        "Scrabble",
        "points for the letter K",
        5,
        "How many points is the letter K worth in English Scrabble?",
    ),
    (
        "Scrabble",
        "points for the letter J",
        8,
        "How many points is the letter J worth in English Scrabble?",
    ),
    (
        "Scrabble",
        "bonus for using all seven tiles",
        50,
        "How many bonus points does a Scrabble player earn for using all seven tiles in one play?",
    ),
    (
        "Monopoly",
        "railroads",
        4,
        "How many railroads are on a classic Monopoly board?",
    ),
    (
        "Monopoly",
        "houses in the bank",
        32,
        "How many houses come with a standard Monopoly set?",
    ),
    (
        "Monopoly",
        "hotels in the bank",
        12,
        "How many hotels come with a standard Monopoly set?",
    ),
    (
        "Monopoly",
        "starting money",
        1500,
        "How many dollars does each player start with in classic Monopoly?",
    ),
    (
        "Monopoly",
        "colored streets",
        22,
        "How many colored street properties are on a classic Monopoly board?",
    ),
    (
        "Catan",
        "terrain hexes",
        19,
        "How many terrain hexes make up the board in the base game of Catan?",
    ),
    (
        "Catan",
        "victory points to win",
        10,
        "How many victory points are needed to win the base game of Catan?",
    ),
    (
        "Catan",
        "resource types",
        5,
        "How many resource types are there in Catan?",
    ),
    (
        "Catan",
        "settlements per player",
        5,
        "How many settlement pieces does each player have in Catan?",
    ),
    (
        "Catan",
        "cities per player",
        4,
        "How many city pieces does each player have in Catan?",
    ),
    (
        "Catan",
        "roads per player",
        15,
        "How many road pieces does each player have in Catan?",
    ),
    (
        "Catan",
        "development cards",
        25,
        "How many development cards are in the base game of Catan?",
    ),
    (
        "Catan",
        "number tokens",
        18,
        "How many number tokens are in the base game of Catan?",
    ),
    (
        "Risk",
        "territories",
        42,
        "How many territories are on the classic Risk board?",
    ),
    (
        "Risk",
        "continents",
        6,
        "How many continents are on the classic Risk board?",
    ),
    (
        "Uno",
        "cards in the deck",
        108,
        "How many cards are in a standard Uno deck?",
    ),
    (
        "Uno",
        "Wild Draw Four cards",
        4,
        "How many Wild Draw Four cards are in a standard Uno deck?",
    ),
    (
        "Cluedo",
        "weapons",
        6,
        "How many weapons are in the classic game of Cluedo (Clue)?",
    ),
    (
        "Cluedo",
        "rooms",
        9,
        "How many rooms are on the classic Cluedo (Clue) board?",
    ),
    (
        "Trivial Pursuit",
        "categories",
        6,
        "How many question categories are in classic Trivial Pursuit?",
    ),
    (
        "Backgammon",
        "highest doubling cube value",
        64,
        "What is the highest number on a backgammon doubling cube?",
    ),
    (
        "Dominoes",
        "tiles in a double-nine set",
        55,
        "How many tiles are in a double-nine domino set?",
    ),
    (
        "Dominoes",
        "tiles in a double-twelve set",
        91,
        "How many tiles are in a double-twelve domino set?",
    ),
    (
        "Chinese checkers",
        "marbles per player",
        10,
        "How many marbles does each player use in Chinese checkers?",
    ),
    (
        "Chinese checkers",
        "holes on the board",
        121,
        "How many holes are on a Chinese checkers board?",
    ),
    (
        "Stratego",
        "pieces per player",
        40,
        "How many pieces does each player have in classic Stratego?",
    ),
    (
        "Stratego",
        "bombs per player",
        6,
        "How many bombs does each player have in classic Stratego?",
    ),
    (
        "Battleship",
        "ships per player",
        5,
        "How many ships does each player place in classic Battleship?",
    ),
    (
        "Battleship",
        "squares on each grid",
        100,
        "How many squares are on each player's grid in Battleship?",
    ),
    (
        "Yahtzee",
        "scoring categories",
        13,
        "How many scoring categories are on a Yahtzee score card?",
    ),
    (
        "Yahtzee",
        "points for a large straight",
        40,
        "How many points is a large straight worth in Yahtzee?",
    ),
    (
        "Bridge",
        "cards dealt to each player",
        13,
        "How many cards is each player dealt in contract bridge?",
    ),
    (
        "Cribbage",
        "highest possible hand",
        29,
        "What is the highest possible hand score in cribbage?",
    ),
    (
        "Texas hold'em",
        "community cards",
        5,
        "How many community cards are dealt in Texas hold'em?",
    ),
    (
        "Mancala",
        "seeds per pit at the start",
        4,
        "How many seeds start in each pit in standard Kalah mancala?",
    ),
    (
        "Othello",
        "discs on the board at the start",
        4,
        "How many discs are on the board at the start of Othello?",
    ),
    (
        "Rugby league",
        "players per team on the field",
        13,
        "How many players does each rugby league team have on the field?",
    ),
    (
        "Australian rules football",
        "players per team on the field",
        18,
        "How many players does each Australian rules football team have on the field?",
    ),
    (
        "Gaelic football",
        "players per team on the field",
        15,
        "How many players does each Gaelic football team have on the field?",
    ),
    (
        "Curling",
        "stones per team per end",
        8,
        "How many stones does each curling team deliver per end?",
    ),
    (
        "Lacrosse",
        "players per team on the field",
        10,
        "How many players does each men's field lacrosse team have on the field?",
    ),
    (
        "Kabaddi",
        "players per team on the court",
        7,
        "How many players does each kabaddi team have on the court?",
    ),
    (
        "Snooker",
        "maximum break",
        147,
        "What is the maximum break in snooker without free balls?",
    ),
    (
        "Snooker",
        "points for the black ball",
        7,
        "How many points is the black ball worth in snooker?",
    ),
    (
        "Jenga",
        "blocks",
        54,
        "How many blocks are in a standard Jenga set?",
    ),
    (
        "Boggle",
        "letter dice",
        16,
        "How many letter dice are in classic Boggle?",
    ),
    (
        "Connect Four",
        "discs",
        42,
        "How many discs come with a standard Connect Four set?",
    ),
    (
        "Tarot",
        "cards in the deck",
        78,
        "How many cards are in a standard tarot deck?",
    ),
    (
        "Tarot",
        "major arcana cards",
        22,
        "How many major arcana cards are in a tarot deck?",
    ),
    (
        "Pinochle",
        "cards in the deck",
        48,
        "How many cards are in a pinochle deck?",
    ),
    (
        "Euchre",
        "cards in the deck",
        24,
        "How many cards are used in a standard euchre deck?",
    ),
    (
        "Skat",
        "cards in the deck",
        32,
        "How many cards are in a skat deck?",
    ),
    (
        "Chess",
        "legal first moves for White",
        20,
        "How many legal first moves does White have in chess?",
    ),
    (
        "Baseball",
        "feet between bases",
        90,
        "How many feet apart are the bases on a regulation baseball diamond?",
    ),
    (
        "Rubik's Cube",
        "visible pieces",
        26,
        "How many visible pieces (cubies) does a standard 3x3 Rubik's Cube have?",
    ),
    (
        "Curling",
        "ends in a men's championship game",
        10,
        "How many ends are played in a standard men's championship curling game?",
    ),
];

/// Well-known strings whose digests may have been memorized.
pub const HASH_WORDS: &[&str] = &[
    "hello",
    "world",
    "password",
    "test",
    "admin",
    "abc",
    "123456",
    "foo",
    "bar",
    "apple",
    "banana",
    "python",
    "qwerty",
    "letmein",
    "welcome",
    "dragon",
    "monkey",
    "secret",
    "hello world",
    "root",
    "user",
    "guest",
    "love",
    "sunshine",
    "football",
    "master",
    "shadow",
    "cat",
    "dog",
    "openai",
    "google",
    "github",
    "linux",
    "java",
    "example",
    "data",
    "hash",
    "md5",
    "sha1",
    "key",
];

/// Common words used to build phrases for medium hashing tasks.
pub const PHRASE_WORDS: &[&str] = &[
    "machine",
    "learning",
    "deep",
    "neural",
    "network",
    "data",
    "science",
    "quantum",
    "computing",
    "cloud",
    "storage",
    "open",
    "source",
    "software",
    "engineering",
    "graph",
    "theory",
    "random",
    "forest",
    "linear",
    "algebra",
    "vector",
    "space",
    "natural",
    "language",
    "processing",
    "computer",
    "vision",
    "signal",
    "image",
    "security",
    "protocol",
    "binary",
    "search",
    "tree",
    "hash",
    "table",
    "stream",
    "buffer",
    "kernel",
    "memory",
    "thread",
    "garden",
    "river",
    "mountain",
    "silver",
    "golden",
    "morning",
    "evening",
    "winter",
    "summer",
    "ocean",
    "paper",
    "pencil",
    "window",
    "coffee",
    "orange",
    "purple",
    "rocket",
    "planet",
];

/// Short, well-known words for Morse and ROT13 tasks.
pub const CODE_WORDS_EASY: &[&str] = &[
    "SOS", "HELLO", "CAT", "DOG", "SUN", "YES", "NO", "HI", "OK", "BYE", "HELP", "LOVE", "STOP",
    "GO", "TEA", "MOON", "STAR", "FISH", "BIRD", "TREE", "BOOK", "HOME", "FIRE", "WATER", "CODE",
];

/// Longer words for Caesar and Morse medium tasks.
pub const CODE_WORDS_MEDIUM: &[&str] = &[
    "CIPHER",
    "SECRET",
    "MESSAGE",
    "ENIGMA",
    "PUZZLE",
    "ANSWER",
    "SIGNAL",
    "HIDDEN",
    "MYSTERY",
    "CASTLE",
    "DRAGON",
    "PLANET",
    "ROCKET",
    "GARDEN",
    "WINTER",
    "SUMMER",
    "FOREST",
    "RIVER",
    "BRIDGE",
    "WINDOW",
    "KINGDOM",
    "HARBOR",
    "LANTERN",
    "COMPASS",
    "JOURNEY",
    "VOYAGE",
    "MARBLE",
    "SILVER",
    "GOLDEN",
    "ORANGE",
    "PURPLE",
    "YELLOW",
    "CRYSTAL",
    "THUNDER",
    "LIGHTNING",
    "BLANKET",
    "CAPTAIN",
    "MOUNTAIN",
    "TEMPLE",
    "SHADOW",
    "KNIGHT",
    "WIZARD",
    "ISLAND",
    "DESERT",
    "VALLEY",
    "CANYON",
    "GALAXY",
    "COMET",
    "METEOR",
    "ORBIT",
];

/// (country, capital, currency, continent, language); None where the
/// answer would be contested.
pub type Country = (
    &'static str,
    &'static str,
    &'static str,
    Option<&'static str>,
    Option<&'static str>,
);

pub const COUNTRIES: &[Country] = &[
    ("Russia", "Moscow", "ruble", None, Some("Russian")),
    (
        "England",
        "London",
        "pound sterling",
        Some("Europe"),
        Some("English"),
    ),
    ("Italy", "Rome", "euro", Some("Europe"), Some("Italian")),
    (
        "the Netherlands",
        "Amsterdam",
        "euro",
        Some("Europe"),
        Some("Dutch"),
    ),
    ("Spain", "Madrid", "euro", Some("Europe"), Some("Spanish")),
    ("Austria", "Vienna", "euro", Some("Europe"), Some("German")),
    ("France", "Paris", "euro", Some("Europe"), Some("French")),
    ("Germany", "Berlin", "euro", Some("Europe"), Some("German")),
    (
        "Norway",
        "Oslo",
        "Norwegian krone",
        Some("Europe"),
        Some("Norwegian"),
    ),
    (
        "the United States",
        "Washington, D.C.",
        "US dollar",
        Some("North America"),
        None,
    ),
    ("Poland", "Warsaw", "zloty", Some("Europe"), Some("Polish")),
    ("Nigeria", "Abuja", "naira", Some("Africa"), Some("English")),
    ("Japan", "Tokyo", "yen", Some("Asia"), Some("Japanese")),
    (
        "Mexico",
        "Mexico City",
        "Mexican peso",
        Some("North America"),
        Some("Spanish"),
    ),
    (
        "the Czech Republic",
        "Prague",
        "koruna",
        Some("Europe"),
        Some("Czech"),
    ),
    ("Finland", "Helsinki", "euro", Some("Europe"), None),
    (
        "Argentina",
        "Buenos Aires",
        "Argentine peso",
        Some("South America"),
        Some("Spanish"),
    ),
    (
        "Hungary",
        "Budapest",
        "forint",
        Some("Europe"),
        Some("Hungarian"),
    ),
    (
        "Portugal",
        "Lisbon",
        "euro",
        Some("Europe"),
        Some("Portuguese"),
    ),
    (
        "Colombia",
        "Bogota",
        "Colombian peso",
        Some("South America"),
        Some("Spanish"),
    ),
];

/// (work, creator relation, creator, creator's home country).
pub type Work = (&'static str, Rel, &'static str, &'static str);

pub const WORKS_EASY: &[Work] = &[
    ("War and Peace", Author, "Leo Tolstoy", "Russia"),
    ("Hamlet", Author, "William Shakespeare", "England"),
    ("the Mona Lisa", Painter, "Leonardo da Vinci", "Italy"),
    (
        "The Starry Night",
        Painter,
        "Vincent van Gogh",
        "the Netherlands",
    ),
    ("Don Quixote", Author, "Miguel de Cervantes", "Spain"),
    (
        "The Magic Flute",
        Composer,
        "Wolfgang Amadeus Mozart",
        "Austria",
    ),
    ("Les Miserables", Author, "Victor Hugo", "France"),
    (
        "the Moonlight Sonata",
        Composer,
        "Ludwig van Beethoven",
        "Germany",
    ),
    ("Guernica", Painter, "Pablo Picasso", "Spain"),
    ("The Scream", Painter, "Edvard Munch", "Norway"),
    (
        "Adventures of Huckleberry Finn",
        Author,
        "Mark Twain",
        "the United States",
    ),
    ("Pride and Prejudice", Author, "Jane Austen", "England"),
    (
        "Crime and Punishment",
        Author,
        "Fyodor Dostoevsky",
        "Russia",
    ),
    (
        "The Nutcracker",
        Composer,
        "Pyotr Ilyich Tchaikovsky",
        "Russia",
    ),
    (
        "The Great Gatsby",
        Author,
        "F. Scott Fitzgerald",
        "the United States",
    ),
    ("Madame Bovary", Author, "Gustave Flaubert", "France"),
    ("The Divine Comedy", Author, "Dante Alighieri", "Italy"),
    ("Water Lilies", Painter, "Claude Monet", "France"),
    ("Faust", Author, "Johann Wolfgang von Goethe", "Germany"),
    ("The Four Seasons", Composer, "Antonio Vivaldi", "Italy"),
    ("the Minute Waltz", Composer, "Frederic Chopin", "Poland"),
    ("The Night Watch", Painter, "Rembrandt", "the Netherlands"),
];

pub const WORKS_MEDIUM: &[Work] = &[
    ("Things Fall Apart", Author, "Chinua Achebe", "Nigeria"),
    ("The Tale of Genji", Author, "Murasaki Shikibu", "Japan"),
    ("Pedro Paramo", Author, "Juan Rulfo", "Mexico"),
    (
        "The Moldau",
        Composer,
        "Bedrich Smetana",
        "the Czech Republic",
    ),
    ("Finlandia", Composer, "Jean Sibelius", "Finland"),
    ("the Peer Gynt suites", Composer, "Edvard Grieg", "Norway"),
    (
        "The Garden of Earthly Delights",
        Painter,
        "Hieronymus Bosch",
        "the Netherlands",
    ),
    ("Las Meninas", Painter, "Diego Velazquez", "Spain"),
    ("Ficciones", Author, "Jorge Luis Borges", "Argentina"),
    ("Bolero", Composer, "Maurice Ravel", "France"),
    (
        "the Hungarian Rhapsodies",
        Composer,
        "Franz Liszt",
        "Hungary",
    ),
    ("The Kiss", Painter, "Gustav Klimt", "Austria"),
    ("Death in Venice", Author, "Thomas Mann", "Germany"),
    (
        "The Unbearable Lightness of Being",
        Author,
        "Milan Kundera",
        "the Czech Republic",
    ),
    ("Blindness", Author, "Jose Saramago", "Portugal"),
    (
        "The Persistence of Memory",
        Painter,
        "Salvador Dali",
        "Spain",
    ),
    (
        "The Little Prince",
        Author,
        "Antoine de Saint-Exupery",
        "France",
    ),
    ("The Tin Drum", Author, "Gunter Grass", "Germany"),
    ("The Lusiads", Author, "Luis de Camoes", "Portugal"),
    (
        "One Hundred Years of Solitude",
        Author,
        "Gabriel Garcia Marquez",
        "Colombia",
    ),
    ("Doctor Zhivago", Author, "Boris Pasternak", "Russia"),
    ("The Hay Wain", Painter, "John Constable", "England"),
];

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn retriever_pools_have_documented_sizes() {
        assert_eq!(RETRIEVER_EASY.len(), 75);
        assert_eq!(RETRIEVER_MEDIUM.len(), 72);
        let easy_rels: HashSet<_> = RETRIEVER_EASY.iter().map(|f| f.0 as u8).collect();
        assert_eq!(easy_rels.len(), 10);
    }

    #[test]
    fn pools_have_unique_prompts_and_ascii_answers() {
        let mut seen = HashSet::new();
        for (rel, s, a) in RETRIEVER_EASY.iter().chain(RETRIEVER_MEDIUM) {
            assert!(seen.insert(rel.question(s)), "duplicate {s}");
            assert!(a.is_ascii(), "{a}");
        }
        let mut seen = HashSet::new();
        for (k, q, _) in YEARS_EASY.iter().chain(YEARS_MEDIUM) {
            assert!(seen.insert(*q) && seen.insert(*k), "duplicate {k}");
        }
        let mut seen = HashSet::new();
        for (g, a, _, q) in GAMES_EASY.iter().chain(GAMES_MEDIUM) {
            assert!(
                seen.insert(format!("{g}/{a}")) && seen.insert(q.to_string()),
                "duplicate {g} {a}"
            );
        }
    }

    #[test]
    fn every_work_points_at_a_known_country() {
        for (w, _, _, c) in WORKS_EASY.iter().chain(WORKS_MEDIUM) {
            assert!(COUNTRIES.iter().any(|k| k.0 == *c), "{w}: {c}");
        }
    }
}
