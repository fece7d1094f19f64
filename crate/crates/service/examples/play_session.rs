//! A human-versus-engine game through the session API, with the what-if
//! annotations the HTTP service returns for each position.

use cdsort::GameKind;
use cdsort_service::{CreateSession, FavorableItem, SessionStore};

fn main() {
    let store = SessionStore::new();
    let request = CreateSession {
        kind: GameKind::CdsFixedPoint,
        start: "[6 5 4 3 2 1]".into(),
        favorable: vec![FavorableItem::PileElement(1)],
    };
    let session = store.create(&request).unwrap();
    let mut s = session.lock().unwrap();
    let view = s.view();
    println!("{} F = {:?}, pile {:?}, optimal play: {} wins", view.state, view.favorable, view.pile, view.evaluation);

    while !s.is_finished() {
        let moves = s.legal_moves().unwrap();
        for m in &moves {
            println!(
                "  {:<16} -> {:<16} pile {:?}  F reachable {:?}  winner {}",
                m.mv, m.successor, m.successor_pile, m.favorable_reachable, m.verdict
            );
        }
        // the human takes the first listed move, the engine answers
        let played = s.play(&moves[0].mv).unwrap().clone();
        println!("{} plays {} -> {}", played.mover, played.mv, played.state);
        if let Ok(reply) = s.engine_move() {
            println!("{} plays {} -> {}", reply.mover, reply.mv, reply.state);
        }
    }
    let view = s.view();
    println!("finished at {}: {} wins", view.state, view.winner.unwrap());
    println!("{}", serde_json::to_string_pretty(&view).unwrap());
}
