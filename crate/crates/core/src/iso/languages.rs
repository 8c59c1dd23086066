//! ISO 639-1 language table: two-letter code and English reference names.

use super::LanguageEntry;

macro_rules! l {
    ($code:literal, $($name:literal),+) => {
        LanguageEntry { code: $code, names: &[$($name),+] }
    };
}

pub(super) static LANGUAGES: &[LanguageEntry] = &[
    l!("aa", "Afar"),
    l!("ab", "Abkhazian"),
    l!("ae", "Avestan"),
    l!("af", "Afrikaans"),
    l!("ak", "Akan"),
    l!("am", "Amharic"),
    l!("an", "Aragonese"),
    l!("ar", "Arabic"),
    l!("as", "Assamese"),
    l!("av", "Avaric"),
    l!("ay", "Aymara"),
    l!("az", "Azerbaijani"),
    l!("ba", "Bashkir"),
    l!("be", "Belarusian"),
    l!("bg", "Bulgarian"),
    l!("bi", "Bislama"),
    l!("bm", "Bambara"),
    l!("bn", "Bengali"),
    l!("bo", "Tibetan"),
    l!("br", "Breton"),
    l!("bs", "Bosnian"),
    l!("ca", "Catalan", "Valencian"),
    l!("ce", "Chechen"),
    l!("ch", "Chamorro"),
    l!("co", "Corsican"),
    l!("cr", "Cree"),
    l!("cs", "Czech"),
    l!("cu", "Church Slavic", "Old Slavonic"),
    l!("cv", "Chuvash"),
    l!("cy", "Welsh"),
    l!("da", "Danish"),
    l!("de", "German"),
    l!("dv", "Divehi", "Dhivehi", "Maldivian"),
    l!("dz", "Dzongkha"),
    l!("ee", "Ewe"),
    l!("el", "Greek"),
    l!("en", "English"),
    l!("eo", "Esperanto"),
    l!("es", "Spanish", "Castilian"),
    l!("et", "Estonian"),
    l!("eu", "Basque"),
    l!("fa", "Persian"),
    l!("ff", "Fulah"),
    l!("fi", "Finnish"),
    l!("fj", "Fijian"),
    l!("fo", "Faroese"),
    l!("fr", "French"),
    l!("fy", "Western Frisian"),
    l!("ga", "Irish"),
    l!("gd", "Gaelic", "Scottish Gaelic"),
    l!("gl", "Galician"),
    l!("gn", "Guarani"),
    l!("gu", "Gujarati"),
    l!("gv", "Manx"),
    l!("ha", "Hausa"),
    l!("he", "Hebrew"),
    l!("hi", "Hindi"),
    l!("ho", "Hiri Motu"),
    l!("hr", "Croatian"),
    l!("ht", "Haitian", "Haitian Creole"),
    l!("hu", "Hungarian"),
    l!("hy", "Armenian"),
    l!("hz", "Herero"),
    l!("ia", "Interlingua"),
    l!("id", "Indonesian"),
    l!("ie", "Interlingue", "Occidental"),
    l!("ig", "Igbo"),
    l!("ii", "Sichuan Yi", "Nuosu"),
    l!("ik", "Inupiaq"),
    l!("io", "Ido"),
    l!("is", "Icelandic"),
    l!("it", "Italian"),
    l!("iu", "Inuktitut"),
    l!("ja", "Japanese"),
    l!("jv", "Javanese"),
    l!("ka", "Georgian"),
    l!("kg", "Kongo"),
    l!("ki", "Kikuyu", "Gikuyu"),
    l!("kj", "Kuanyama", "Kwanyama"),
    l!("kk", "Kazakh"),
    l!("kl", "Kalaallisut", "Greenlandic"),
    l!("km", "Central Khmer"),
    l!("kn", "Kannada"),
    l!("ko", "Korean"),
    l!("kr", "Kanuri"),
    l!("ks", "Kashmiri"),
    l!("ku", "Kurdish"),
    l!("kv", "Komi"),
    l!("kw", "Cornish"),
    l!("ky", "Kirghiz", "Kyrgyz"),
    l!("la", "Latin"),
    l!("lb", "Luxembourgish", "Letzeburgesch"),
    l!("lg", "Ganda"),
    l!("li", "Limburgan", "Limburger", "Limburgish"),
    l!("ln", "Lingala"),
    l!("lo", "Lao"),
    l!("lt", "Lithuanian"),
    l!("lu", "Luba-Katanga"),
    l!("lv", "Latvian"),
    l!("mg", "Malagasy"),
    l!("mh", "Marshallese"),
    l!("mi", "Maori"),
    l!("mk", "Macedonian"),
    l!("ml", "Malayalam"),
    l!("mn", "Mongolian"),
    l!("mr", "Marathi"),
    l!("ms", "Malay"),
    l!("mt", "Maltese"),
    l!("my", "Burmese"),
    l!("na", "Nauru"),
    l!("nb", "Norwegian Bokmal"),
    l!("nd", "North Ndebele"),
    l!("ne", "Nepali"),
    l!("ng", "Ndonga"),
    l!("nl", "Dutch", "Flemish"),
    l!("nn", "Norwegian Nynorsk"),
    l!("no", "Norwegian"),
    l!("nr", "South Ndebele"),
    l!("nv", "Navajo", "Navaho"),
    l!("ny", "Chichewa", "Chewa", "Nyanja"),
    l!("oc", "Occitan"),
    l!("oj", "Ojibwa"),
    l!("om", "Oromo"),
    l!("or", "Oriya"),
    l!("os", "Ossetian", "Ossetic"),
    l!("pa", "Punjabi", "Panjabi"),
    l!("pi", "Pali"),
    l!("pl", "Polish"),
    l!("ps", "Pashto", "Pushto"),
    l!("pt", "Portuguese"),
    l!("qu", "Quechua"),
    l!("rm", "Romansh"),
    l!("rn", "Rundi"),
    l!("ro", "Romanian", "Moldavian", "Moldovan"),
    l!("ru", "Russian"),
    l!("rw", "Kinyarwanda"),
    l!("sa", "Sanskrit"),
    l!("sc", "Sardinian"),
    l!("sd", "Sindhi"),
    l!("se", "Northern Sami"),
    l!("sg", "Sango"),
    l!("si", "Sinhala", "Sinhalese"),
    l!("sk", "Slovak"),
    l!("sl", "Slovenian"),
    l!("sm", "Samoan"),
    l!("sn", "Shona"),
    l!("so", "Somali"),
    l!("sq", "Albanian"),
    l!("sr", "Serbian"),
    l!("ss", "Swati"),
    l!("st", "Southern Sotho"),
    l!("su", "Sundanese"),
    l!("sv", "Swedish"),
    l!("sw", "Swahili"),
    l!("ta", "Tamil"),
    l!("te", "Telugu"),
    l!("tg", "Tajik"),
    l!("th", "Thai"),
    l!("ti", "Tigrinya"),
    l!("tk", "Turkmen"),
    l!("tl", "Tagalog"),
    l!("tn", "Tswana"),
    l!("to", "Tonga"),
    l!("tr", "Turkish"),
    l!("ts", "Tsonga"),
    l!("tt", "Tatar"),
    l!("tw", "Twi"),
    l!("ty", "Tahitian"),
    l!("ug", "Uighur", "Uyghur"),
    l!("uk", "Ukrainian"),
    l!("ur", "Urdu"),
    l!("uz", "Uzbek"),
    l!("ve", "Venda"),
    l!("vi", "Vietnamese"),
    l!("vo", "Volapuk"),
    l!("wa", "Walloon"),
    l!("wo", "Wolof"),
    l!("xh", "Xhosa"),
    l!("yi", "Yiddish"),
    l!("yo", "Yoruba"),
    l!("za", "Zhuang", "Chuang"),
    l!("zh", "Chinese"),
    l!("zu", "Zulu"),
];
