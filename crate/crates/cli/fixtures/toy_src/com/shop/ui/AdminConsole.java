package com.shop.ui;

import com.shop.service.InventoryService;
import com.shop.service.OrderService;
import com.shop.model.Customer;
import com.shop.util.Logger;

public class AdminConsole {
    private final InventoryService inventory = new InventoryService();
    private final OrderService orders = new OrderService();
    private final Logger log = new Logger("admin");

    public void run() {
        log.info("restocking");
        inventory.restock(10);
        orders.report();
    }
}
