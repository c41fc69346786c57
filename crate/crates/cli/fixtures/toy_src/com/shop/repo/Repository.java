package com.shop.repo;

import java.util.Collection;

public interface Repository<T> {
    Collection<T> all();

    default int count() {
        return all().size();
    }
}
