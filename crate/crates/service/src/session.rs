//! A single human-versus-engine game.

use lctr_core::{
    best_move, follower_values, sg_grid, Followers, GrundyValue, MoveKind, Outcome, Partition,
};
use serde::{Deserialize, Serialize};

use crate::error::ServiceError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Actor {
    Human,
    Engine,
}

/// Whether, and on which turn, the engine plays.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EngineRole {
    /// Every move comes from the client.
    None,
    PlaysFirst,
    #[default]
    PlaysSecond,
}

impl std::str::FromStr for EngineRole {
    type Err = ServiceError;

    fn from_str(s: &str) -> Result<Self, ServiceError> {
        match s {
            "none" => Ok(EngineRole::None),
            "plays_first" | "first" => Ok(EngineRole::PlaysFirst),
            "plays_second" | "second" => Ok(EngineRole::PlaysSecond),
            other => Err(ServiceError::Unprocessable(format!(
                "unknown engine_role `{other}` (none, plays_first, plays_second)"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HistoryEntry {
    pub actor: Actor,
    #[serde(rename = "move")]
    pub kind: MoveKind,
    pub resulting: Partition,
}

#[derive(Clone, Debug)]
pub struct GameSession {
    id: String,
    start: Partition,
    position: Partition,
    history: Vec<HistoryEntry>,
    engine_role: EngineRole,
    winner: Option<Actor>,
}

/// What the service reports about a session.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SessionView {
    pub id: String,
    pub start: Partition,
    pub position: Partition,
    /// Row lengths of the diagram to draw; same numbers as `position`.
    pub rows: Vec<u32>,
    pub turn: Option<Actor>,
    /// Number of moves played so far. Clients may echo it back with a move
    /// to have stale submissions rejected.
    pub ply: usize,
    pub engine_role: EngineRole,
    pub finished: bool,
    pub winner: Option<Actor>,
    pub history: Vec<HistoryEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hint {
    pub sg: GrundyValue,
    pub outcome: Outcome,
    pub followers: Followers,
}

impl GameSession {
    /// Opens a game at `start`. When the engine plays first its opening move
    /// is already applied.
    pub fn new(
        id: String,
        start: Partition,
        engine_role: EngineRole,
    ) -> Result<Self, ServiceError> {
        if start.is_empty() {
            return Err(ServiceError::Unprocessable(
                "the start position must be nonempty".into(),
            ));
        }
        let mut session = GameSession {
            id,
            position: start.clone(),
            start,
            history: Vec::new(),
            engine_role,
            winner: None,
        };
        if engine_role == EngineRole::PlaysFirst {
            session.engine_move();
        }
        Ok(session)
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn position(&self) -> &Partition {
        &self.position
    }

    pub fn history(&self) -> &[HistoryEntry] {
        &self.history
    }

    pub fn is_finished(&self) -> bool {
        self.position.is_empty()
    }

    pub fn winner(&self) -> Option<Actor> {
        self.winner
    }

    /// Whose move it is, `None` once the game is over.
    pub fn turn(&self) -> Option<Actor> {
        if self.is_finished() {
            return None;
        }
        let ply = self.history.len();
        Some(match self.engine_role {
            EngineRole::None => Actor::Human,
            EngineRole::PlaysFirst if ply.is_multiple_of(2) => Actor::Engine,
            EngineRole::PlaysSecond if ply % 2 == 1 => Actor::Engine,
            _ => Actor::Human,
        })
    }

    fn push(&mut self, actor: Actor, kind: MoveKind) {
        let next = self.position.apply(kind).expect("game not finished");
        self.position = next.clone();
        self.history.push(HistoryEntry {
            actor,
            kind,
            resulting: next,
        });
        if self.position.is_empty() {
            self.winner = Some(actor);
        }
    }

    fn engine_move(&mut self) {
        let (kind, _) = best_move(&self.position).expect("game not finished");
        self.push(Actor::Engine, kind);
    }

    /// Applies the human's move and, if the game goes on and the engine
    /// plays, the engine's reply. Returns the entries added to the history.
    ///
    /// `expected_ply`, when given, must equal the current number of moves.
    pub fn apply_human_move(
        &mut self,
        kind: MoveKind,
        expected_ply: Option<usize>,
    ) -> Result<&[HistoryEntry], ServiceError> {
        if self.is_finished() {
            return Err(ServiceError::Conflict("the game is finished".into()));
        }
        if self.turn() != Some(Actor::Human) {
            return Err(ServiceError::Conflict("it is not the human's turn".into()));
        }
        if let Some(ply) = expected_ply {
            if ply != self.history.len() {
                return Err(ServiceError::Conflict(format!(
                    "stale move: expected ply {ply}, game is at ply {}",
                    self.history.len()
                )));
            }
        }
        let before = self.history.len();
        self.push(Actor::Human, kind);
        if self.turn() == Some(Actor::Engine) {
            self.engine_move();
        }
        Ok(&self.history[before..])
    }

    pub fn hint(&self) -> Result<Hint, ServiceError> {
        if self.is_finished() {
            return Err(ServiceError::Conflict("the game is finished".into()));
        }
        let sg = sg_grid(&self.position);
        Ok(Hint {
            sg,
            outcome: Outcome::from_value(sg),
            followers: follower_values(&self.position).expect("nonempty position"),
        })
    }

    pub fn view(&self) -> SessionView {
        SessionView {
            id: self.id.clone(),
            start: self.start.clone(),
            position: self.position.clone(),
            rows: self.position.parts().to_vec(),
            turn: self.turn(),
            ply: self.history.len(),
            engine_role: self.engine_role,
            finished: self.is_finished(),
            winner: self.winner,
            history: self.history.clone(),
        }
    }
}

impl SessionView {
    /// Replaying the history from the start must land on the position, the
    /// game is finished exactly when the position is empty, and the winner
    /// is the last mover.
    pub fn is_consistent(&self) -> bool {
        let mut pos = self.start.clone();
        for entry in &self.history {
            match pos.apply(entry.kind) {
                Ok(next) if next == entry.resulting => pos = next,
                _ => return false,
            }
        }
        pos == self.position
            && self.rows == self.position.parts()
            && self.finished == self.position.is_empty()
            && self.winner
                == self
                    .finished
                    .then(|| self.history.last().map(|e| e.actor))
                    .flatten()
            && self.finished == self.winner.is_some()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str) -> Partition {
        text.parse().unwrap()
    }

    fn session(start: &str, role: EngineRole) -> GameSession {
        GameSession::new("g".into(), p(start), role).unwrap()
    }

    #[test]
    fn create_examples() {
        let s = session("5,3^2,2,1^2", EngineRole::PlaysSecond);
        assert_eq!(s.position(), &p("5,3^2,2,1^2"));
        assert!(s.history().is_empty());
        assert_eq!(s.turn(), Some(Actor::Human));

        let s = session("5,3^2,2,1^2", EngineRole::PlaysFirst);
        assert_eq!(s.position(), &p("3,3,2,1,1"));
        assert_eq!(
            s.history(),
            &[HistoryEntry {
                actor: Actor::Engine,
                kind: MoveKind::TopRow,
                resulting: p("3,3,2,1,1")
            }]
        );
        assert_eq!(s.turn(), Some(Actor::Human));

        assert!(matches!(
            GameSession::new("g".into(), Partition::empty(), EngineRole::None),
            Err(ServiceError::Unprocessable(_))
        ));
    }

    #[test]
    fn engine_wins_gamma_as_second_player() {
        let mut s = session("2,1", EngineRole::PlaysSecond);
        let added = s.apply_human_move(MoveKind::TopRow, None).unwrap().to_vec();
        assert_eq!(added.len(), 2);
        assert_eq!(added[0].resulting, p("1"));
        assert_eq!(added[1].actor, Actor::Engine);
        assert!(s.is_finished());
        assert_eq!(s.winner(), Some(Actor::Engine));
        assert!(s.view().is_consistent());
    }

    #[test]
    fn human_wins_by_taking_the_row() {
        let mut s = session("7", EngineRole::PlaysSecond);
        s.apply_human_move(MoveKind::TopRow, None).unwrap();
        assert!(s.is_finished());
        assert_eq!(s.winner(), Some(Actor::Human));
        assert_eq!(s.history().len(), 1);
        assert!(matches!(
            s.apply_human_move(MoveKind::TopRow, None),
            Err(ServiceError::Conflict(_))
        ));
        assert!(matches!(s.hint(), Err(ServiceError::Conflict(_))));
    }

    #[test]
    fn stale_ply_is_rejected() {
        let mut s = session("6,5,4,3,2,1", EngineRole::None);
        s.apply_human_move(MoveKind::LeftColumn, Some(0)).unwrap();
        assert!(matches!(
            s.apply_human_move(MoveKind::LeftColumn, Some(0)),
            Err(ServiceError::Conflict(_))
        ));
        s.apply_human_move(MoveKind::LeftColumn, Some(1)).unwrap();
        assert_eq!(s.position(), &p("4,3,2,1"));
        assert_eq!(
            s.history()
                .iter()
                .filter(|e| e.actor == Actor::Engine)
                .count(),
            0
        );
    }

    #[test]
    fn hints() {
        let h = session("5,3^2,2,1^2", EngineRole::PlaysSecond)
            .hint()
            .unwrap();
        assert_eq!(h.sg, GrundyValue::ONE);
        assert_eq!(h.outcome, Outcome::NextPlayerWins);
        assert_eq!(h.followers.left.sg, GrundyValue::TWO);
        assert_eq!(h.followers.top.sg, GrundyValue::ZERO);

        let h = session("6,1^4", EngineRole::PlaysSecond).hint().unwrap();
        assert_eq!(
            (h.sg, h.outcome),
            (GrundyValue::ZERO, Outcome::PreviousPlayerWins)
        );

        let h = session("4,4", EngineRole::PlaysSecond).hint().unwrap();
        assert_eq!(h.sg, GrundyValue::ZERO);
        assert_eq!(
            (h.followers.left.sg, h.followers.top.sg),
            (GrundyValue::TWO, GrundyValue::TWO)
        );
    }

    #[test]
    fn roles_parse() {
        assert_eq!(
            "plays_first".parse::<EngineRole>().unwrap(),
            EngineRole::PlaysFirst
        );
        assert_eq!("none".parse::<EngineRole>().unwrap(), EngineRole::None);
        assert!("sometimes".parse::<EngineRole>().is_err());
    }
}
