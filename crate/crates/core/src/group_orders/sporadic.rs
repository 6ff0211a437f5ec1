//! Orders and odd order components of the sporadic groups and the Tits group.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sporadic {
    M11,
    M12,
    M22,
    M23,
    M24,
    J1,
    J2,
    J3,
    J4,
    HS,
    McL,
    Suz,
    Co1,
    Co2,
    Co3,
    He,
    HN,
    Ly,
    ON,
    Ru,
    Fi22,
    Fi23,
    Fi24,
    Th,
    B,
    M,
    Tits,
}

pub struct SporadicData {
    pub name: &'static str,
    pub order: &'static [(u64, u32)],
    pub odd_components: &'static [u64],
}

impl Sporadic {
    pub const ALL: [Sporadic; 27] = [
        Sporadic::M11,
        Sporadic::M12,
        Sporadic::M22,
        Sporadic::M23,
        Sporadic::M24,
        Sporadic::J1,
        Sporadic::J2,
        Sporadic::J3,
        Sporadic::J4,
        Sporadic::HS,
        Sporadic::McL,
        Sporadic::Suz,
        Sporadic::Co1,
        Sporadic::Co2,
        Sporadic::Co3,
        Sporadic::He,
        Sporadic::HN,
        Sporadic::Ly,
        Sporadic::ON,
        Sporadic::Ru,
        Sporadic::Fi22,
        Sporadic::Fi23,
        Sporadic::Fi24,
        Sporadic::Th,
        Sporadic::B,
        Sporadic::M,
        Sporadic::Tits,
    ];

    pub fn data(self) -> SporadicData {
        use Sporadic::*;
        // Orders from the Atlas; odd components are the prime-graph components
        // not containing 2, read off the Atlas element orders.
        let (name, order, odd_components): (&str, &[(u64, u32)], &[u64]) = match self {
            M11 => ("M11", &[(2, 4), (3, 2), (5, 1), (11, 1)], &[5, 11]),
            M12 => ("M12", &[(2, 6), (3, 3), (5, 1), (11, 1)], &[11]),
            M22 => (
                "M22",
                &[(2, 7), (3, 2), (5, 1), (7, 1), (11, 1)],
                &[5, 7, 11],
            ),
            M23 => (
                "M23",
                &[(2, 7), (3, 2), (5, 1), (7, 1), (11, 1), (23, 1)],
                &[11, 23],
            ),
            M24 => (
                "M24",
                &[(2, 10), (3, 3), (5, 1), (7, 1), (11, 1), (23, 1)],
                &[11, 23],
            ),
            J1 => (
                "J1",
                &[(2, 3), (3, 1), (5, 1), (7, 1), (11, 1), (19, 1)],
                &[7, 11, 19],
            ),
            J2 => ("J2", &[(2, 7), (3, 3), (5, 2), (7, 1)], &[7]),
            J3 => ("J3", &[(2, 7), (3, 5), (5, 1), (17, 1), (19, 1)], &[17, 19]),
            J4 => (
                "J4",
                &[
                    (2, 21),
                    (3, 3),
                    (5, 1),
                    (7, 1),
                    (11, 3),
                    (23, 1),
                    (29, 1),
                    (31, 1),
                    (37, 1),
                    (43, 1),
                ],
                &[23, 29, 31, 37, 43],
            ),
            HS => ("HS", &[(2, 9), (3, 2), (5, 3), (7, 1), (11, 1)], &[7, 11]),
            McL => ("McL", &[(2, 7), (3, 6), (5, 3), (7, 1), (11, 1)], &[11]),
            Suz => (
                "Suz",
                &[(2, 13), (3, 7), (5, 2), (7, 1), (11, 1), (13, 1)],
                &[11, 13],
            ),
            Co1 => (
                "Co1",
                &[(2, 21), (3, 9), (5, 4), (7, 2), (11, 1), (13, 1), (23, 1)],
                &[23],
            ),
            Co2 => (
                "Co2",
                &[(2, 18), (3, 6), (5, 3), (7, 1), (11, 1), (23, 1)],
                &[11, 23],
            ),
            Co3 => (
                "Co3",
                &[(2, 10), (3, 7), (5, 3), (7, 1), (11, 1), (23, 1)],
                &[23],
            ),
            He => ("He", &[(2, 10), (3, 3), (5, 2), (7, 3), (17, 1)], &[17]),
            HN => (
                "HN",
                &[(2, 14), (3, 6), (5, 6), (7, 1), (11, 1), (19, 1)],
                &[19],
            ),
            Ly => (
                "Ly",
                &[
                    (2, 8),
                    (3, 7),
                    (5, 6),
                    (7, 1),
                    (11, 1),
                    (31, 1),
                    (37, 1),
                    (67, 1),
                ],
                &[31, 37, 67],
            ),
            ON => (
                "O'N",
                &[(2, 9), (3, 4), (5, 1), (7, 3), (11, 1), (19, 1), (31, 1)],
                &[11, 19, 31],
            ),
            Ru => (
                "Ru",
                &[(2, 14), (3, 3), (5, 3), (7, 1), (13, 1), (29, 1)],
                &[29],
            ),
            Fi22 => (
                "Fi22",
                &[(2, 17), (3, 9), (5, 2), (7, 1), (11, 1), (13, 1)],
                &[13],
            ),
            Fi23 => (
                "Fi23",
                &[
                    (2, 18),
                    (3, 13),
                    (5, 2),
                    (7, 1),
                    (11, 1),
                    (13, 1),
                    (17, 1),
                    (23, 1),
                ],
                &[17, 23],
            ),
            Fi24 => (
                "Fi24'",
                &[
                    (2, 21),
                    (3, 16),
                    (5, 2),
                    (7, 3),
                    (11, 1),
                    (13, 1),
                    (17, 1),
                    (23, 1),
                    (29, 1),
                ],
                &[17, 29],
            ),
            Th => (
                "Th",
                &[(2, 15), (3, 10), (5, 3), (7, 2), (13, 1), (19, 1), (31, 1)],
                &[19, 31],
            ),
            B => (
                "B",
                &[
                    (2, 41),
                    (3, 13),
                    (5, 6),
                    (7, 2),
                    (11, 1),
                    (13, 1),
                    (17, 1),
                    (19, 1),
                    (23, 1),
                    (31, 1),
                    (47, 1),
                ],
                &[31, 47],
            ),
            M => (
                "M",
                &[
                    (2, 46),
                    (3, 20),
                    (5, 9),
                    (7, 6),
                    (11, 2),
                    (13, 3),
                    (17, 1),
                    (19, 1),
                    (23, 1),
                    (29, 1),
                    (31, 1),
                    (41, 1),
                    (47, 1),
                    (59, 1),
                    (71, 1),
                ],
                &[41, 59, 71],
            ),
            Tits => ("2F4(2)'", &[(2, 11), (3, 3), (5, 2), (13, 1)], &[13]),
        };
        SporadicData {
            name,
            order,
            odd_components,
        }
    }

    pub fn name(self) -> &'static str {
        self.data().name
    }
}
