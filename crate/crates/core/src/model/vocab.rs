//! Closed vocabularies used by card fields.
//!
//! Every variant has a stable camelCase token shared by the textual syntax
//! and the JSON export.

use alloc::string::String;

macro_rules! vocab {
    ($(#[$meta:meta])* $name:ident { $( $variant:ident => $token:literal ),+ $(,)? }) => {
        $(#[$meta])*
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum $name {
            $( $variant, )+
        }

        impl $name {
            pub const ALL: &'static [$name] = &[ $( $name::$variant, )+ ];

            pub fn as_str(self) -> &'static str {
                match self { $( $name::$variant => $token, )+ }
            }

            pub fn from_token(s: &str) -> Option<Self> {
                match s { $( $token => Some($name::$variant), )+ _ => None }
            }
        }
    };
}

/// Like `vocab!` but with a free-text `Other` variant. In card text a quoted
/// string selects `Other`; a bare token must be one of the named variants.
macro_rules! open_vocab {
    ($(#[$meta:meta])* $name:ident { $( $variant:ident => $token:literal ),+ $(,)? }) => {
        $(#[$meta])*
        #[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum $name {
            $( $variant, )+
            Other(String),
        }

        impl $name {
            pub const TOKENS: &'static [&'static str] = &[ $( $token, )+ ];

            /// Token for named variants, `None` for `Other`.
            pub fn token(&self) -> Option<&'static str> {
                match self { $( $name::$variant => Some($token), )+ $name::Other(_) => None }
            }

            pub fn from_token(s: &str) -> Option<Self> {
                match s { $( $token => Some($name::$variant), )+ _ => None }
            }

            /// The token, or the free text for `Other`.
            pub fn label(&self) -> &str {
                match self {
                    $name::Other(s) => s,
                    named => named.token().unwrap_or_default(),
                }
            }
        }
    };
}

vocab!(WorkplaceType { Presential => "presential", Remote => "remote", Hybrid => "hybrid" });

vocab!(
    /// CEFR proficiency levels.
    Proficiency { A1 => "a1", A2 => "a2", B1 => "b1", B2 => "b2", C1 => "c1", C2 => "c2" }
);

vocab!(
    /// ISCED 2011 levels 0-8.
    EducationLevel {
        EarlyChildhood => "earlyChildhood",
        Primary => "primary",
        LowerSecondary => "lowerSecondary",
        UpperSecondary => "upperSecondary",
        PostSecondaryNonTertiary => "postSecondaryNonTertiary",
        ShortCycleTertiary => "shortCycleTertiary",
        BachelorEquivalent => "bachelorEquivalent",
        MasterEquivalent => "masterEquivalent",
        DoctorateEquivalent => "doctorateEquivalent",
    }
);

vocab!(SocioEconomicClass {
    LowerClass => "lowerClass",
    LowerMiddleClass => "lowerMiddleClass",
    MiddleClass => "middleClass",
    UpperMiddleClass => "upperMiddleClass",
    UpperClass => "upperClass",
});

vocab!(SkillLevel {
    Beginner => "beginner",
    Intermediate => "intermediate",
    Advanced => "advanced",
    Expert => "expert",
});

vocab!(TeamKind {
    Development => "development",
    Tester => "tester",
    PublicReporter => "publicReporter",
    NonCodingContributor => "nonCodingContributor",
});

vocab!(TestType {
    PublicBeta => "publicBeta",
    ControlledBeta => "controlledBeta",
    CrowdTesting => "crowdTesting",
});

vocab!(Sourcing { Internal => "internal", External => "external" });

open_vocab!(ContributorRole {
    Reporter => "reporter",
    Translator => "translator",
    Documenter => "documenter",
    Reviewer => "reviewer",
    Advocate => "advocate",
});

open_vocab!(OrganizationType {
    PrivateCompany => "privateCompany",
    PublicAdministration => "publicAdministration",
    Ngo => "ngo",
    ResearchInstitution => "researchInstitution",
    OpenCommunity => "openCommunity",
});

open_vocab!(BodyType {
    Board => "board",
    PrivateCompany => "privateCompany",
    Corporation => "corporation",
    PublicAdministration => "publicAdministration",
    OpenCommunity => "openCommunity",
    ResearchProject => "researchProject",
});

open_vocab!(FunderType {
    Private => "private",
    PublicAdministration => "publicAdministration",
    Ngo => "ngo",
    Crowdfunding => "crowdfunding",
});
