#pragma once

namespace vicheck
{
    enum class AllianceKind
    {
        Defensive,
        Offensive,
        Powerful
    };

    enum class PartProperty
    {
        Independent,
        Connected
    };

    enum class CapacitatedKind
    {
        VertexCover,
        DominatingSet
    };
}
