//! Relation vocabulary: families, symbols, converses, coarsenings.

use std::fmt;

/// The relation families this crate can qualify.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum RelationFamily {
    Mereotopology,
    Interval,
    Orientation,
    Distance,
    Size,
    Motion,
    /// Point-in-region predicates such as `gaze-on`, used by the background
    /// knowledge library and fluent derivation.
    Occupancy,
}

impl RelationFamily {
    pub const ALL: [RelationFamily; 7] = [
        RelationFamily::Mereotopology,
        RelationFamily::Interval,
        RelationFamily::Orientation,
        RelationFamily::Distance,
        RelationFamily::Size,
        RelationFamily::Motion,
        RelationFamily::Occupancy,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RelationFamily::Mereotopology => "mereotopology",
            RelationFamily::Interval => "interval",
            RelationFamily::Orientation => "orientation",
            RelationFamily::Distance => "distance",
            RelationFamily::Size => "size",
            RelationFamily::Motion => "motion",
            RelationFamily::Occupancy => "occupancy",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|f| f.name() == s)
    }
}

impl fmt::Display for RelationFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The eight jointly exhaustive, pairwise disjoint base relations of the
/// region connection calculus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Rcc8 {
    Dc,
    Ec,
    Po,
    Tpp,
    Ntpp,
    Tppi,
    Ntppi,
    Eq,
}

impl Rcc8 {
    pub const ALL: [Rcc8; 8] =
        [Rcc8::Dc, Rcc8::Ec, Rcc8::Po, Rcc8::Tpp, Rcc8::Ntpp, Rcc8::Tppi, Rcc8::Ntppi, Rcc8::Eq];

    pub fn name(self) -> &'static str {
        match self {
            Rcc8::Dc => "dc",
            Rcc8::Ec => "ec",
            Rcc8::Po => "po",
            Rcc8::Tpp => "tpp",
            Rcc8::Ntpp => "ntpp",
            Rcc8::Tppi => "tppi",
            Rcc8::Ntppi => "ntppi",
            Rcc8::Eq => "eq",
        }
    }

    pub fn converse(self) -> Self {
        match self {
            Rcc8::Tpp => Rcc8::Tppi,
            Rcc8::Ntpp => Rcc8::Ntppi,
            Rcc8::Tppi => Rcc8::Tpp,
            Rcc8::Ntppi => Rcc8::Ntpp,
            other => other,
        }
    }

    /// Coarsening into the five-relation calculus.
    pub fn coarsen(self) -> Rcc5 {
        match self {
            Rcc8::Dc | Rcc8::Ec => Rcc5::Dr,
            Rcc8::Po => Rcc5::Po,
            Rcc8::Tpp | Rcc8::Ntpp => Rcc5::Pp,
            Rcc8::Tppi | Rcc8::Ntppi => Rcc5::Ppi,
            Rcc8::Eq => Rcc5::Eq,
        }
    }
}

/// Coarse mereotopology: discrete, partial overlap, proper part (both
/// directions) and equality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Rcc5 {
    Dr,
    Po,
    Pp,
    Ppi,
    Eq,
}

impl Rcc5 {
    pub fn name(self) -> &'static str {
        match self {
            Rcc5::Dr => "dr",
            Rcc5::Po => "po",
            Rcc5::Pp => "pp",
            Rcc5::Ppi => "ppi",
            Rcc5::Eq => "eq",
        }
    }
}

/// Union symbols over the base relations: part `p`, overlap `o`, contact
/// `c`, and discrete `dr`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Rcc8Union {
    P,
    O,
    C,
    Dr,
}

impl Rcc8Union {
    pub fn name(self) -> &'static str {
        match self {
            Rcc8Union::P => "p",
            Rcc8Union::O => "o",
            Rcc8Union::C => "c",
            Rcc8Union::Dr => "dr",
        }
    }

    pub fn members(self) -> &'static [Rcc8] {
        match self {
            Rcc8Union::P => &[Rcc8::Tpp, Rcc8::Ntpp, Rcc8::Eq],
            Rcc8Union::O => &[Rcc8::Po, Rcc8::Tpp, Rcc8::Ntpp, Rcc8::Tppi, Rcc8::Ntppi, Rcc8::Eq],
            Rcc8Union::C => &[
                Rcc8::Ec,
                Rcc8::Po,
                Rcc8::Tpp,
                Rcc8::Ntpp,
                Rcc8::Tppi,
                Rcc8::Ntppi,
                Rcc8::Eq,
            ],
            Rcc8Union::Dr => &[Rcc8::Dc, Rcc8::Ec],
        }
    }

    pub fn contains(self, r: Rcc8) -> bool {
        self.members().contains(&r)
    }
}

/// The thirteen interval relations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum AllenRelation {
    Precedes,
    Meets,
    Overlaps,
    Starts,
    During,
    Finishes,
    Equals,
    PrecededBy,
    MetBy,
    OverlappedBy,
    StartedBy,
    Contains,
    FinishedBy,
}

impl AllenRelation {
    pub const ALL: [AllenRelation; 13] = [
        AllenRelation::Precedes,
        AllenRelation::Meets,
        AllenRelation::Overlaps,
        AllenRelation::Starts,
        AllenRelation::During,
        AllenRelation::Finishes,
        AllenRelation::Equals,
        AllenRelation::PrecededBy,
        AllenRelation::MetBy,
        AllenRelation::OverlappedBy,
        AllenRelation::StartedBy,
        AllenRelation::Contains,
        AllenRelation::FinishedBy,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AllenRelation::Precedes => "precedes",
            AllenRelation::Meets => "meets",
            AllenRelation::Overlaps => "overlaps",
            AllenRelation::Starts => "starts",
            AllenRelation::During => "during",
            AllenRelation::Finishes => "finishes",
            AllenRelation::Equals => "equals",
            AllenRelation::PrecededBy => "preceded-by",
            AllenRelation::MetBy => "met-by",
            AllenRelation::OverlappedBy => "overlapped-by",
            AllenRelation::StartedBy => "started-by",
            AllenRelation::Contains => "contains",
            AllenRelation::FinishedBy => "finished-by",
        }
    }

    pub fn converse(self) -> Self {
        match self {
            AllenRelation::Precedes => AllenRelation::PrecededBy,
            AllenRelation::Meets => AllenRelation::MetBy,
            AllenRelation::Overlaps => AllenRelation::OverlappedBy,
            AllenRelation::Starts => AllenRelation::StartedBy,
            AllenRelation::During => AllenRelation::Contains,
            AllenRelation::Finishes => AllenRelation::FinishedBy,
            AllenRelation::Equals => AllenRelation::Equals,
            AllenRelation::PrecededBy => AllenRelation::Precedes,
            AllenRelation::MetBy => AllenRelation::Meets,
            AllenRelation::OverlappedBy => AllenRelation::Overlaps,
            AllenRelation::StartedBy => AllenRelation::Starts,
            AllenRelation::Contains => AllenRelation::During,
            AllenRelation::FinishedBy => AllenRelation::Finishes,
        }
    }
}

/// Relative direction of a reference point against a directed axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum LrRelation {
    Left,
    Right,
    Front,
    Back,
    On,
    Start,
    End,
}

impl LrRelation {
    pub fn name(self) -> &'static str {
        match self {
            LrRelation::Left => "left",
            LrRelation::Right => "right",
            LrRelation::Front => "front",
            LrRelation::Back => "back",
            LrRelation::On => "on",
            LrRelation::Start => "start",
            LrRelation::End => "end",
        }
    }

    /// The `collinear` union: every refinement of lying on the axis line.
    pub fn is_collinear(self) -> bool {
        !matches!(self, LrRelation::Left | LrRelation::Right)
    }
}

/// Coarse orientation relations between two oriented points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum OrientationRelation {
    FacingTowards,
    FacingAway,
    SameDirection,
    OppositeDirection,
}

impl OrientationRelation {
    pub fn name(self) -> &'static str {
        match self {
            OrientationRelation::FacingTowards => "facing-towards",
            OrientationRelation::FacingAway => "facing-away",
            OrientationRelation::SameDirection => "same-direction",
            OrientationRelation::OppositeDirection => "opposite-direction",
        }
    }
}

/// Qualitative distance classes by boundary gap.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum DistanceRelation {
    Adjacent,
    Near,
    Far,
}

impl DistanceRelation {
    pub fn name(self) -> &'static str {
        match self {
            DistanceRelation::Adjacent => "adjacent",
            DistanceRelation::Near => "near",
            DistanceRelation::Far => "far",
        }
    }
}

/// Relative size classes by area with a relative tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum SizeRelation {
    Smaller,
    EquiSized,
    Larger,
}

impl SizeRelation {
    pub fn name(self) -> &'static str {
        match self {
            SizeRelation::Smaller => "smaller",
            SizeRelation::EquiSized => "equi-sized",
            SizeRelation::Larger => "larger",
        }
    }
}

/// Motion relations over track windows, including extent changes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum MotionRelation {
    MovingTowards,
    MovingAway,
    MovingParallel,
    PassingInFront,
    PassingBehind,
    Splitting,
    Merging,
    GrowingVertically,
    GrowingHorizontally,
    ShrinkingVertically,
    ShrinkingHorizontally,
}

impl MotionRelation {
    pub fn name(self) -> &'static str {
        match self {
            MotionRelation::MovingTowards => "moving-towards",
            MotionRelation::MovingAway => "moving-away",
            MotionRelation::MovingParallel => "moving-parallel",
            MotionRelation::PassingInFront => "passing-in-front",
            MotionRelation::PassingBehind => "passing-behind",
            MotionRelation::Splitting => "splitting",
            MotionRelation::Merging => "merging",
            MotionRelation::GrowingVertically => "growing-vertically",
            MotionRelation::GrowingHorizontally => "growing-horizontally",
            MotionRelation::ShrinkingVertically => "shrinking-vertically",
            MotionRelation::ShrinkingHorizontally => "shrinking-horizontally",
        }
    }
}

/// Point-in-region predicates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum OccupancyRelation {
    GazeOn,
}

impl OccupancyRelation {
    pub fn name(self) -> &'static str {
        match self {
            OccupancyRelation::GazeOn => "gaze-on",
        }
    }
}

/// Any relation symbol, tagged by family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum RelationSymbol {
    Mereotopology(Rcc8),
    Interval(AllenRelation),
    Lr(LrRelation),
    Orientation(OrientationRelation),
    Distance(DistanceRelation),
    Size(SizeRelation),
    Motion(MotionRelation),
    Occupancy(OccupancyRelation),
}

impl RelationSymbol {
    pub fn family(self) -> RelationFamily {
        match self {
            RelationSymbol::Mereotopology(_) => RelationFamily::Mereotopology,
            RelationSymbol::Interval(_) => RelationFamily::Interval,
            RelationSymbol::Lr(_) | RelationSymbol::Orientation(_) => RelationFamily::Orientation,
            RelationSymbol::Distance(_) => RelationFamily::Distance,
            RelationSymbol::Size(_) => RelationFamily::Size,
            RelationSymbol::Motion(_) => RelationFamily::Motion,
            RelationSymbol::Occupancy(_) => RelationFamily::Occupancy,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            RelationSymbol::Mereotopology(r) => r.name(),
            RelationSymbol::Interval(r) => r.name(),
            RelationSymbol::Lr(r) => r.name(),
            RelationSymbol::Orientation(r) => r.name(),
            RelationSymbol::Distance(r) => r.name(),
            RelationSymbol::Size(r) => r.name(),
            RelationSymbol::Motion(r) => r.name(),
            RelationSymbol::Occupancy(r) => r.name(),
        }
    }

    /// Looks a symbol up by its display name.
    pub fn parse(s: &str) -> Option<Self> {
        for r in Rcc8::ALL {
            if r.name() == s {
                return Some(RelationSymbol::Mereotopology(r));
            }
        }
        for r in AllenRelation::ALL {
            if r.name() == s {
                return Some(RelationSymbol::Interval(r));
            }
        }
        let lr = [
            LrRelation::Left,
            LrRelation::Right,
            LrRelation::Front,
            LrRelation::Back,
            LrRelation::On,
            LrRelation::Start,
            LrRelation::End,
        ];
        for r in lr {
            if r.name() == s {
                return Some(RelationSymbol::Lr(r));
            }
        }
        let ori = [
            OrientationRelation::FacingTowards,
            OrientationRelation::FacingAway,
            OrientationRelation::SameDirection,
            OrientationRelation::OppositeDirection,
        ];
        for r in ori {
            if r.name() == s {
                return Some(RelationSymbol::Orientation(r));
            }
        }
        let dist = [DistanceRelation::Adjacent, DistanceRelation::Near, DistanceRelation::Far];
        for r in dist {
            if r.name() == s {
                return Some(RelationSymbol::Distance(r));
            }
        }
        let size = [SizeRelation::Smaller, SizeRelation::EquiSized, SizeRelation::Larger];
        for r in size {
            if r.name() == s {
                return Some(RelationSymbol::Size(r));
            }
        }
        let motion = [
            MotionRelation::MovingTowards,
            MotionRelation::MovingAway,
            MotionRelation::MovingParallel,
            MotionRelation::PassingInFront,
            MotionRelation::PassingBehind,
            MotionRelation::Splitting,
            MotionRelation::Merging,
            MotionRelation::GrowingVertically,
            MotionRelation::GrowingHorizontally,
            MotionRelation::ShrinkingVertically,
            MotionRelation::ShrinkingHorizontally,
        ];
        for r in motion {
            if r.name() == s {
                return Some(RelationSymbol::Motion(r));
            }
        }
        if s == OccupancyRelation::GazeOn.name() {
            return Some(RelationSymbol::Occupancy(OccupancyRelation::GazeOn));
        }
        None
    }
}

impl fmt::Display for RelationSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}
