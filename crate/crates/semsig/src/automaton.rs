//! Five-state acceptor over the configuration alphabet, with transitions
//! derived from slope continuity.

use core::fmt;

use crate::encoder::{ConfigSymbol, Sign};

/// Acceptor state. `Flat`, `Falling`, and `Rising` are the accepting states
/// and record the slope of the last consumed segment; `Dead` is absorbing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DfaState {
    /// Before any symbol; not accepting.
    Start,
    /// Last segment had slope zero.
    Flat,
    /// Last segment had negative slope.
    Falling,
    /// Last segment had positive slope.
    Rising,
    /// Absorbing rejection state.
    Dead,
}

impl DfaState {
    /// All states, in transition-table row order.
    pub const ALL: [DfaState; 5] = [
        DfaState::Start,
        DfaState::Flat,
        DfaState::Falling,
        DfaState::Rising,
        DfaState::Dead,
    ];

    /// Whether the state is accepting.
    pub fn is_accepting(self) -> bool {
        matches!(self, DfaState::Flat | DfaState::Falling | DfaState::Rising)
    }

    /// Single-letter tag used in traces: S, A, B, C, or D.
    pub fn tag(self) -> char {
        match self {
            DfaState::Start => 'S',
            DfaState::Flat => 'A',
            DfaState::Falling => 'B',
            DfaState::Rising => 'C',
            DfaState::Dead => 'D',
        }
    }

    fn row(self) -> usize {
        match self {
            DfaState::Start => 0,
            DfaState::Flat => 1,
            DfaState::Falling => 2,
            DfaState::Rising => 3,
            DfaState::Dead => 4,
        }
    }
}

impl fmt::Display for DfaState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.tag())
    }
}

/// Transition table; rows follow [`DfaState::ALL`], columns follow symbol
/// codes 1 through 13.
const DELTA: [[DfaState; 13]; 5] = {
    use DfaState::{Dead as D, Falling as B, Flat as A, Rising as C};
    [
        [B, C, C, B, C, B, C, B, A, C, B, A, A],
        [D, D, D, D, D, D, D, D, A, C, B, D, D],
        [B, D, D, B, C, D, D, B, D, D, D, D, A],
        [D, C, C, D, D, B, C, D, D, D, D, A, D],
        [D, D, D, D, D, D, D, D, D, D, D, D, D],
    ]
};

/// One transition of the acceptor.
pub fn dfa_step(state: DfaState, symbol: ConfigSymbol) -> DfaState {
    DELTA[state.row()][symbol.index()]
}

fn slope_state(sign: Sign) -> DfaState {
    match sign {
        Sign::Zero => DfaState::Flat,
        Sign::Minus => DfaState::Falling,
        Sign::Plus => DfaState::Rising,
    }
}

/// The same transition computed from slope continuity instead of the stored
/// table: a symbol is consumable iff its entering slope matches the state's
/// recorded slope (any slope from `Start`), and the successor records the
/// symbol's leaving slope.
pub fn dfa_step_from_slopes(state: DfaState, symbol: ConfigSymbol) -> DfaState {
    let triple = symbol.triple();
    match state {
        DfaState::Dead => DfaState::Dead,
        DfaState::Start => slope_state(triple.d_fwd),
        _ if slope_state(triple.d_back) == state => slope_state(triple.d_fwd),
        _ => DfaState::Dead,
    }
}

/// Outcome of running the acceptor over a symbol sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AcceptanceResult {
    /// True iff the final state is accepting.
    pub accepted: bool,
    /// State after the last symbol; `Start` for empty input.
    pub final_state: DfaState,
    /// State after each consumed symbol.
    pub trace: Vec<DfaState>,
    /// Position of the symbol whose transition first entered `Dead`, if any.
    pub rejection_index: Option<usize>,
}

/// Runs the acceptor from `Start` over the whole sequence.
///
/// Empty input is not accepted, since `Start` is not an accepting state.
pub fn dfa_accept(symbols: &[ConfigSymbol]) -> AcceptanceResult {
    let mut state = DfaState::Start;
    let mut trace = Vec::with_capacity(symbols.len());
    let mut rejection_index = None;
    for (i, &symbol) in symbols.iter().enumerate() {
        state = dfa_step(state, symbol);
        if state == DfaState::Dead && rejection_index.is_none() {
            rejection_index = Some(i);
        }
        trace.push(state);
    }
    AcceptanceResult {
        accepted: state.is_accepting(),
        final_state: state,
        trace,
        rejection_index,
    }
}

/// Whether `next` can follow `prev` in a physically contiguous encoding: the
/// segment leaving `prev` must be the segment entering `next`.
pub fn compatible(prev: ConfigSymbol, next: ConfigSymbol) -> bool {
    prev.triple().d_fwd == next.triple().d_back
}
